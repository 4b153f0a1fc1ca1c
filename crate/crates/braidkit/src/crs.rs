//! Reduction systems of twist-form braids.
//!
//! A twist form is a product of powers of half-twists about disjoint round
//! two-punctured curves, optionally a power of the Dehn twist about the curve
//! around the first `n-1` punctures, and a central power. For this family the
//! reduction system is the set of factor curves, and the passage to a labeled
//! multicurve records which elements of a family see each curve.

use crate::curves::{act, class_of_round, dehn_twist, CurveClass, RoundCurve};
use crate::garside::{commutes, equal};
use crate::multicurve::{LabelMask, LabeledTree};
use crate::report::Checks;
use crate::tss::TotallySymmetricSetCert;
use crate::word::BraidWord;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistFactorKind {
    /// Half-twist about a two-punctured round curve; the exponent counts
    /// half-twists.
    HalfTwist,
    /// Dehn twist about the curve around the first `n-1` punctures.
    DehnTwist,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistFactor {
    pub curve: RoundCurve,
    pub exponent: i64,
    pub kind: TwistFactorKind,
}

/// A braid of the form `H_{d_1}^{e_1} ... H_{d_k}^{e_k} T_{c_0}^r z^s` with
/// the `d_i` disjoint two-punctured round curves and `c_0` the round curve
/// around the first `n-1` punctures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistForm {
    strands: usize,
    factors: Vec<TwistFactor>,
    central: i64,
}

impl TwistForm {
    pub fn new(strands: usize, factors: Vec<TwistFactor>, central: i64) -> Result<Self> {
        for f in &factors {
            if f.curve.strands() != strands {
                return Err(Error::StrandMismatch(f.curve.strands(), strands));
            }
            if f.exponent == 0 {
                return Err(Error::InvalidTwistForm("zero exponent".into()));
            }
            match f.kind {
                TwistFactorKind::HalfTwist => {
                    if !f.curve.is_two_punctured() {
                        return Err(Error::InvalidTwistForm(format!(
                            "half-twist factor {} must surround two punctures",
                            f.curve
                        )));
                    }
                }
                TwistFactorKind::DehnTwist => {
                    if f.curve.lo() != 1 || f.curve.hi() != strands - 1 {
                        return Err(Error::InvalidTwistForm(format!(
                            "dehn factor must be the curve around the first {} punctures",
                            strands - 1
                        )));
                    }
                }
            }
        }
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                let (a, b) = (&factors[i].curve, &factors[j].curve);
                if a == b {
                    return Err(Error::InvalidTwistForm(format!("duplicate curve {a}")));
                }
                if !a.compatible(b) {
                    return Err(Error::InvalidTwistForm(format!("curves {a} and {b} cross")));
                }
            }
        }
        Ok(TwistForm { strands, factors, central })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[TwistFactor] {
        &self.factors
    }

    pub fn central(&self) -> i64 {
        self.central
    }

    /// The braid word: factor words in listed order, then the central power.
    pub fn word(&self) -> BraidWord {
        let mut acc = BraidWord::empty(self.strands);
        for f in &self.factors {
            let base = match f.kind {
                TwistFactorKind::HalfTwist => {
                    BraidWord::generator(self.strands, f.curve.lo()).expect("valid generator")
                }
                TwistFactorKind::DehnTwist => dehn_twist(&f.curve),
            };
            acc = acc.concat(&base.pow(f.exponent)).expect("same strands");
        }
        let z = BraidWord::center_pow(self.strands, self.central).expect("valid center");
        acc.concat(&z).expect("same strands")
    }

    /// The reduction system: the factor curves. Central powers contribute
    /// nothing; an empty factor list has an empty system.
    pub fn crs_curves(&self) -> Vec<RoundCurve> {
        let mut curves: Vec<RoundCurve> = self.factors.iter().map(|f| f.curve).collect();
        curves.sort();
        curves
    }

    pub fn crs_classes(&self) -> Vec<CurveClass> {
        self.crs_curves().iter().map(class_of_round).collect()
    }
}

impl fmt::Display for TwistForm {
    /// Format: `H[1,2]^3 * T[1,6]^2 * z^-1 (n=7)`; an empty product prints
    /// as `1 (n=7)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for fac in &self.factors {
            let sym = match fac.kind {
                TwistFactorKind::HalfTwist => "H",
                TwistFactorKind::DehnTwist => "T",
            };
            let mut part = format!("{sym}[{},{}]", fac.curve.lo(), fac.curve.hi());
            if fac.exponent != 1 {
                part.push_str(&format!("^{}", fac.exponent));
            }
            parts.push(part);
        }
        if self.central != 0 {
            if self.central == 1 {
                parts.push("z".to_string());
            } else {
                parts.push(format!("z^{}", self.central));
            }
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        write!(f, "{} (n={})", parts.join(" * "), self.strands)
    }
}

impl FromStr for TwistForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s
            .rfind("(n=")
            .ok_or_else(|| Error::Parse("missing `(n=..)` suffix".into()))?;
        let n: usize = s[open + 3..]
            .trim_end_matches(')')
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad strand count".into()))?;
        let body = s[..open].trim();
        let mut factors = Vec::new();
        let mut central = 0i64;
        for raw in body.split('*') {
            let tok = raw.trim();
            if tok.is_empty() || tok == "1" {
                continue;
            }
            if let Some(rest) = tok.strip_prefix('z') {
                let k: i64 = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| Error::Parse(format!("bad central factor {tok:?}")))?
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad central exponent {tok:?}")))?
                };
                central += k;
                continue;
            }
            let (kind, rest) = if let Some(r) = tok.strip_prefix('H') {
                (TwistFactorKind::HalfTwist, r)
            } else if let Some(r) = tok.strip_prefix('T') {
                (TwistFactorKind::DehnTwist, r)
            } else {
                return Err(Error::Parse(format!("unknown factor {tok:?}")));
            };
            let rest = rest
                .strip_prefix('[')
                .ok_or_else(|| Error::Parse(format!("missing `[` in {tok:?}")))?;
            let (interval, exp_part) = rest
                .split_once(']')
                .ok_or_else(|| Error::Parse(format!("missing `]` in {tok:?}")))?;
            let (lo_s, hi_s) = interval
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("missing `,` in {tok:?}")))?;
            let exponent: i64 = if exp_part.is_empty() {
                1
            } else {
                exp_part
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("bad exponent in {tok:?}")))?
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?
            };
            let curve = RoundCurve::new(
                n,
                lo_s.trim().parse().map_err(|_| Error::Parse("bad lo".into()))?,
                hi_s.trim().parse().map_err(|_| Error::Parse("bad hi".into()))?,
            )?;
            factors.push(TwistFactor { curve, exponent, kind });
        }
        TwistForm::new(n, factors, central)
    }
}

/// The twist forms of the standard odd-generator family: `H_{c_i}`.
pub fn xn_twist_forms(n: usize) -> Result<Vec<TwistForm>> {
    (1..=n / 2)
        .map(|i| {
            let curve = RoundCurve::new(n, 2 * i - 1, 2 * i)?;
            TwistForm::new(
                n,
                vec![TwistFactor { curve, exponent: 1, kind: TwistFactorKind::HalfTwist }],
                0,
            )
        })
        .collect()
}

/// The twist forms of the central translates `H_{c_i}^{n(n-1)} z^{-1}`.
pub fn zn_twist_forms(n: usize) -> Result<Vec<TwistForm>> {
    let p = (n * (n - 1)) as i64;
    (1..=n / 2)
        .map(|i| {
            let curve = RoundCurve::new(n, 2 * i - 1, 2 * i)?;
            TwistForm::new(
                n,
                vec![TwistFactor { curve, exponent: p, kind: TwistFactorKind::HalfTwist }],
                -1,
            )
        })
        .collect()
}

/// The twist forms of the difference family `s_1 s_{2i+1}^{-1}`.
pub fn yn_twist_forms(n: usize) -> Result<Vec<TwistForm>> {
    let c1 = RoundCurve::new(n, 1, 2)?;
    (2..=n / 2)
        .map(|i| {
            let ci = RoundCurve::new(n, 2 * i - 1, 2 * i)?;
            TwistForm::new(
                n,
                vec![
                    TwistFactor { curve: c1, exponent: 1, kind: TwistFactorKind::HalfTwist },
                    TwistFactor { curve: ci, exponent: -1, kind: TwistFactorKind::HalfTwist },
                ],
                0,
            )
        })
        .collect()
}

/// The labeled multicurve of a family: curves are the union of the members'
/// reduction systems, each labeled by the set of members seeing it.
pub fn gamma_of_set(forms: &[TwistForm], label_count: usize) -> Result<LabeledTree> {
    if forms.is_empty() {
        return Err(Error::InvalidTwistForm("empty family".into()));
    }
    if label_count != forms.len() {
        return Err(Error::InvalidTwistForm(format!(
            "label count {} does not match family size {}",
            label_count,
            forms.len()
        )));
    }
    let n = forms[0].strands();
    for f in forms {
        if f.strands() != n {
            return Err(Error::StrandMismatch(f.strands(), n));
        }
    }
    let mut labels: BTreeMap<RoundCurve, LabelMask> = BTreeMap::new();
    for (i, form) in forms.iter().enumerate() {
        for curve in form.crs_curves() {
            *labels.entry(curve).or_insert(0) |= 1 << i;
        }
    }
    let pairs: Vec<(RoundCurve, LabelMask)> = labels.into_iter().collect();
    LabeledTree::from_round(n, label_count, &pairs)
}

/// Consistency checks for the conjugation behaviour of a reduction system:
/// the transported classes are distinct, the conjugated word fixes each of
/// them, and a conjugator commuting with the word permutes the system.
pub fn check_crs_axioms(t: &TwistForm, g: &BraidWord) -> Result<Checks> {
    if g.strands() != t.strands() {
        return Err(Error::StrandMismatch(g.strands(), t.strands()));
    }
    let mut checks = Checks::new();
    let classes = t.crs_classes();
    let images: Vec<CurveClass> = classes.iter().map(|c| act(g, c)).collect();

    let mut distinct = true;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            distinct &= images[i] != images[j];
        }
    }
    checks.push("transported curves stay distinct", distinct, "");

    let word = t.word();
    let conjugated = BraidWord::conjugate(g, &word)?;
    let mut fixed = true;
    for img in &images {
        fixed &= act(&conjugated, img) == *img;
    }
    checks.push(
        "conjugated element fixes the transported system",
        fixed,
        format!("{} curves", images.len()),
    );

    if commutes(g, &word)? {
        let mut originals = classes.clone();
        let mut transported = images.clone();
        originals.sort();
        transported.sort();
        checks.push(
            "commuting conjugator permutes the system",
            originals == transported,
            "",
        );
    }
    Ok(checks)
}

/// Verifies that conjugating `t` by `g` gives exactly the twist form
/// `expected`: equal as braids, with the system transported curve by curve.
pub fn crs_conjugate_matches(t: &TwistForm, g: &BraidWord, expected: &TwistForm) -> Result<bool> {
    let conjugated = BraidWord::conjugate(g, &t.word())?;
    if !equal(&conjugated, &expected.word())? {
        return Ok(false);
    }
    let mut transported: Vec<CurveClass> = t.crs_classes().iter().map(|c| act(g, c)).collect();
    let mut target = expected.crs_classes();
    transported.sort();
    target.sort();
    Ok(transported == target)
}

/// Reduction systems of commuting twist forms are disjoint; for twist forms
/// this is visible at the level of curve classes.
pub fn crs_pair_disjoint(a: &TwistForm, b: &TwistForm) -> Result<bool> {
    if !commutes(&a.word(), &b.word())? {
        return Err(Error::InvalidTwistForm("elements do not commute".into()));
    }
    let ca = a.crs_classes();
    let cb = b.crs_classes();
    Ok(ca.iter().all(|x| !cb.contains(x)))
}

/// `gamma_of_set` of a verified totally symmetric family of twist forms,
/// checking that the family's words match the certificate set's elements.
pub fn gamma_of_cert_set(
    forms: &[TwistForm],
    cert: &TotallySymmetricSetCert,
) -> Result<LabeledTree> {
    if forms.len() != cert.elements.len() {
        return Err(Error::InvalidTwistForm(
            "family size does not match certificate set".into(),
        ));
    }
    for (form, elem) in forms.iter().zip(cert.elements.iter()) {
        if !equal(&form.word(), elem)? {
            return Err(Error::InvalidTwistForm(format!(
                "twist form {form} does not equal its certificate element"
            )));
        }
    }
    gamma_of_set(forms, forms.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicurve::{standard_m, standard_m_hat};
    use crate::tss;

    #[test]
    fn twist_form_words() {
        let n = 7;
        // a single half-twist is the generator
        let h1: TwistForm = "H[1,2] (n=7)".parse().unwrap();
        assert!(equal(&h1.word(), &BraidWord::generator(n, 1).unwrap()).unwrap());
        // empty factors with s = 1 is the center
        let z: TwistForm = "z (n=7)".parse().unwrap();
        assert!(equal(&z.word(), &BraidWord::center(n).unwrap()).unwrap());
        // the central translate has exponent sum zero
        let zn = zn_twist_forms(n).unwrap();
        assert!(zn.iter().all(|t| t.word().exponent_sum() == 0));
    }

    #[test]
    fn factor_order_is_immaterial() {
        let a: TwistForm = "H[1,2]^3 * H[5,6]^-2 (n=7)".parse().unwrap();
        let b: TwistForm = "H[5,6]^-2 * H[1,2]^3 (n=7)".parse().unwrap();
        assert!(equal(&a.word(), &b.word()).unwrap());
    }

    #[test]
    fn twist_form_validation() {
        assert!("H[1,3] (n=7)".parse::<TwistForm>().is_err());
        assert!("T[1,5] (n=7)".parse::<TwistForm>().is_err());
        assert!("H[1,2]^0 (n=7)".parse::<TwistForm>().is_err());
        assert!("H[1,2] * H[2,3] (n=7)".parse::<TwistForm>().is_err());
        assert!("H[6,7] * T[1,6] (n=7)".parse::<TwistForm>().is_err());
        assert!("H[1,2]^3 * T[1,6]^2 * z^-1 (n=7)".parse::<TwistForm>().is_ok());
    }

    #[test]
    fn twist_form_display_round_trip() {
        for s in [
            "H[1,2]^3 * T[1,6]^2 * z^-1 (n=7)",
            "H[3,4] (n=9)",
            "z^-2 (n=5)",
            "1 (n=5)",
        ] {
            let t: TwistForm = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
    }

    #[test]
    fn crs_examples() {
        let n = 7;
        let zn = zn_twist_forms(n).unwrap();
        assert_eq!(zn[0].crs_curves(), vec![RoundCurve::new(n, 1, 2).unwrap()]);
        let y: TwistForm = "H[1,2] * H[3,4]^-1 (n=7)".parse().unwrap();
        assert_eq!(
            y.crs_curves(),
            vec![RoundCurve::new(n, 1, 2).unwrap(), RoundCurve::new(n, 3, 4).unwrap()]
        );
        let central: TwistForm = "z^3 (n=7)".parse().unwrap();
        assert!(central.crs_curves().is_empty());
    }

    #[test]
    fn gamma_of_standard_families() {
        for n in 5..=8 {
            let zn = zn_twist_forms(n).unwrap();
            let tree = gamma_of_set(&zn, zn.len()).unwrap();
            assert!(tree.equivalent(&standard_m(n).unwrap()).unwrap(), "Z family at n={n}");

            let xn = xn_twist_forms(n).unwrap();
            let tree = gamma_of_set(&xn, xn.len()).unwrap();
            assert!(tree.equivalent(&standard_m(n).unwrap()).unwrap(), "X family at n={n}");
        }
    }

    #[test]
    fn gamma_with_dehn_factor_is_m_hat() {
        let n = 7;
        let forms: Vec<TwistForm> = (1..=n / 2)
            .map(|i| {
                format!("H[{},{}]^2 * T[1,6] * z (n=7)", 2 * i - 1, 2 * i)
                    .parse()
                    .unwrap()
            })
            .collect();
        let tree = gamma_of_set(&forms, forms.len()).unwrap();
        assert!(tree.equivalent(&standard_m_hat(n).unwrap()).unwrap());
    }

    #[test]
    fn gamma_of_yn_has_common_curve() {
        let n = 9;
        let yn = yn_twist_forms(n).unwrap();
        let tree = gamma_of_set(&yn, yn.len()).unwrap();
        // c_1 lies in every member's system, so it carries the full label;
        // the family is still totally symmetric
        assert!(tree.is_totally_symmetric().unwrap());
        assert!(!tree.all_labels_trivial());
    }

    #[test]
    fn axioms_with_central_conjugator() {
        let n = 7;
        let t: TwistForm = "H[1,2]^42 * z^-1 (n=7)".parse().unwrap();
        let z = BraidWord::center(n).unwrap();
        let checks = check_crs_axioms(&t, &z).unwrap();
        assert!(checks.all_passed(), "{checks}");
    }

    #[test]
    fn axioms_with_certificate_conjugator() {
        let n = 6;
        let zn_forms = zn_twist_forms(n).unwrap();
        let zn = tss::make_zn(n).unwrap();
        // the first certificate swaps the first two elements
        let g = &zn.certs[0];
        let checks = check_crs_axioms(&zn_forms[0], g).unwrap();
        assert!(checks.all_passed(), "{checks}");
        assert!(crs_conjugate_matches(&zn_forms[0], g, &zn_forms[1]).unwrap());
        assert!(!crs_conjugate_matches(&zn_forms[0], g, &zn_forms[0]).unwrap());
    }

    #[test]
    fn commuting_pair_disjoint_systems() {
        let a: TwistForm = "H[1,2] (n=7)".parse().unwrap();
        let b: TwistForm = "H[3,4] (n=7)".parse().unwrap();
        assert!(crs_pair_disjoint(&a, &b).unwrap());
        let c: TwistForm = "H[2,3] (n=7)".parse().unwrap();
        assert!(crs_pair_disjoint(&a, &c).is_err());
    }

    #[test]
    fn gamma_of_cert_set_cross_checks_words() {
        let n = 6;
        let forms = zn_twist_forms(n).unwrap();
        let cert = tss::make_zn(n).unwrap();
        let tree = gamma_of_cert_set(&forms, &cert).unwrap();
        assert!(tree.equivalent(&standard_m(n).unwrap()).unwrap());
    }
}
