//! Command-line entry point binding all subsystems.

use std::io::Write;

pub fn run(args: &[String], out: &mut dyn Write) -> u8 {
    let _ = (args, out);
    0
}
