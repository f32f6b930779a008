use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{build, FinCat, FinFunctor};

use super::{CatWeight, SetPresheaf};

/// The standard weights shipped with the library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightName {
    /// `J` discrete on `n` objects, `W` constant at `1`.
    Product(usize),
    /// `J = (u, v: a ⇉ b)`, `W(a) = 1`, `W(b) = 2`, `W(u) = 0`, `W(v) = 1`.
    Inserter,
    /// `J = 1` and `W` the commutative triangle `0 → 1 → 2`; its limit
    /// objects are composable pairs together with a composite, cut out by an
    /// equifier.
    Equifier,
    /// `J = (p: a → c ← b: q)`, `W(a) = W(b) = 1`, `W(c) = 2`, `W(p) = 0`,
    /// `W(q) = 1`.
    Comma,
    /// `J = (u, v: a ⇉ b)`, `W` constant at `1`.
    Equalizer,
    /// `J` the free idempotent, `W` constant at `1`.
    IdempotentSplitting,
}

impl WeightName {
    /// Parses `product(n)`, `product` (n = 2), `inserter`, `equifier`,
    /// `comma`, `equalizer`, `idempotent_splitting`.
    pub fn parse(name: &str) -> Result<WeightName> {
        let name = name.trim();
        if let Some(rest) = name.strip_prefix("product") {
            if rest.is_empty() {
                return Ok(WeightName::Product(2));
            }
            if let Some(n) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                if let Ok(n) = n.trim().parse() {
                    return Ok(WeightName::Product(n));
                }
            }
            return Err(Error::UnknownWeightName(name.to_string()));
        }
        Ok(match name {
            "inserter" => WeightName::Inserter,
            "equifier" => WeightName::Equifier,
            "comma" => WeightName::Comma,
            "equalizer" => WeightName::Equalizer,
            "idempotent_splitting" | "idempotent-splitting" => WeightName::IdempotentSplitting,
            _ => return Err(Error::UnknownWeightName(name.to_string())),
        })
    }
}

fn point(c: &Arc<FinCat>, one: &Arc<FinCat>, x: usize) -> FinFunctor {
    FinFunctor::constant(one, c, x)
}

pub fn named_weight(name: &WeightName) -> CatWeight {
    let one = Arc::new(build::terminal());
    match name {
        WeightName::Product(n) => CatWeight::constant(&Arc::new(build::discrete_n(*n)), &one),
        WeightName::Equalizer => CatWeight::constant(&Arc::new(build::parallel_pair()), &one),
        WeightName::IdempotentSplitting => {
            CatWeight::constant(&Arc::new(build::free_idempotent()), &one)
        }
        WeightName::Equifier => {
            CatWeight::constant(&Arc::new(build::terminal()), &Arc::new(build::ordinal(3)))
        }
        WeightName::Inserter => {
            let j = Arc::new(build::parallel_pair());
            let two = Arc::new(build::arrow());
            let action = vec![
                FinFunctor::identity(&one),
                FinFunctor::identity(&two),
                point(&two, &one, 0),
                point(&two, &one, 1),
            ];
            CatWeight::new(j, vec![one, two], action).expect("inserter weight tables")
        }
        WeightName::Comma => {
            let j = Arc::new(build::cospan());
            let two = Arc::new(build::arrow());
            let action = vec![
                FinFunctor::identity(&one),
                FinFunctor::identity(&one),
                FinFunctor::identity(&two),
                point(&two, &one, 0),
                point(&two, &one, 1),
            ];
            CatWeight::new(j, vec![one.clone(), one, two], action).expect("comma weight tables")
        }
    }
}

/// Looks up a weight by its textual name.
pub fn named_weight_str(name: &str) -> Result<CatWeight> {
    Ok(named_weight(&WeightName::parse(name)?))
}

/// `J(j, −)` as a locally discrete Cat-valued weight.
pub fn representable_weight(index: &Arc<FinCat>, j: usize) -> CatWeight {
    let p = SetPresheaf::representable(index, j);
    discrete_weight(&p)
}

/// A Set-valued presheaf viewed as a Cat-valued weight with discrete values.
pub fn discrete_weight(p: &SetPresheaf) -> CatWeight {
    let j = p.index();
    let values: Vec<Arc<FinCat>> = (0..j.object_count())
        .map(|k| Arc::new(build::discrete(p.set(k))))
        .collect();
    let action = (0..j.morphism_count())
        .map(|f| {
            let (s, d) = (j.src(f), j.dst(f));
            let objs = p.action(f).to_vec();
            // in a discrete category the identity of object y is morphism y
            FinFunctor::new_unchecked(values[s].clone(), values[d].clone(), objs.clone(), objs)
        })
        .collect();
    CatWeight::new(j.clone(), values, action).expect("presheaf is functorial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{is_pie_weight, ob_presheaf};

    #[test]
    fn parse_names() {
        assert_eq!(WeightName::parse("product(3)").unwrap(), WeightName::Product(3));
        assert_eq!(WeightName::parse("comma").unwrap(), WeightName::Comma);
        assert!(matches!(
            WeightName::parse("coinserter"),
            Err(Error::UnknownWeightName(_))
        ));
        assert!(WeightName::parse("product(x)").is_err());
    }

    #[test]
    fn inserter_presheaf() {
        let w = named_weight(&WeightName::Inserter);
        let p = ob_presheaf(&w);
        assert_eq!(p.set(0).len(), 1);
        assert_eq!(p.set(1), &["0".to_string(), "1".to_string()]);
    }

    #[test]
    fn pie_verdicts() {
        for (name, pie) in [
            ("product(0)", true),
            ("product(3)", true),
            ("inserter", true),
            ("equifier", true),
            ("comma", true),
            ("equalizer", false),
            ("idempotent_splitting", false),
        ] {
            let w = named_weight_str(name).unwrap();
            let (verdict, cert) = is_pie_weight(&w);
            assert_eq!(verdict, pie, "{name}");
            cert.verify(&ob_presheaf(&w)).unwrap();
        }
    }

    #[test]
    fn representable_weight_matches_hom_sets() {
        let j = Arc::new(build::cospan());
        let w = representable_weight(&j, 0);
        assert_eq!(w.value(2).object_count(), 1);
        assert_eq!(w.value(1).object_count(), 0);
        assert!(is_pie_weight(&w).0);
    }
}
