//! Built-in example spaces, instances and function triples.

use crate::contraction::{ContractionInstance, InstanceSpec, MapPiece, SelfMap, Variant};
use crate::functions::{CClassEntry, FunctionSpec, Piece, TripledSpec, CCLASS_ENTRIES};
use crate::rational::{int, rat, Rational};
use crate::spaces::{build_space, sample_interval, Fallback, GeneralizedMetricSpace, PairDistance, Point};

/// Step used for the `[1, 2]` part of the coefficient-three space.
pub fn ex2_default_step() -> Rational {
    rat(1, 8)
}

/// `{1/2, ..., 1/7}` with its fifteen tabulated distances, plus `[1, 2]`
/// sampled at `step`; squared difference elsewhere. Claimed `s = 3`.
pub fn ex2_space(step: &Rational) -> GeneralizedMetricSpace {
    let a: Vec<Point> = (2..=7).map(|n| Point::at(rat(1, n))).collect();
    let rows: [(Rational, [(i64, i64); 3]); 5] = [
        (rat(1, 20), [(2, 3), (4, 5), (6, 7)]),
        (rat(2, 25), [(2, 4), (3, 7), (5, 6)]),
        (rat(2, 5), [(2, 6), (3, 4), (5, 7)]),
        (rat(6, 25), [(2, 5), (3, 6), (4, 7)]),
        (rat(3, 20), [(2, 7), (3, 5), (4, 6)]),
    ];
    let entries: Vec<PairDistance> = rows
        .iter()
        .flat_map(|(d, pairs)| {
            pairs
                .iter()
                .map(move |(p, q)| PairDistance::new(format!("1/{p}"), format!("1/{q}"), d.clone()))
        })
        .collect();
    let mut points = a;
    points.extend(sample_interval(&int(1), &int(2), step).expect("valid interval"));
    build_space(points, &entries, Fallback::SquaredDifference)
        .expect("example table is consistent")
        .with_claimed_s(Some(int(3)))
}

/// Step used for the `[1/2, 1]` part of the worked example.
pub fn main_default_step() -> Rational {
    rat(1, 32)
}

/// `{0, 1/5, 1/9, 1/16}` with six tabulated distances, plus `[1/2, 1]` sampled
/// at `step`; squared difference elsewhere. Claimed `s = 3`.
pub fn main_space(step: &Rational) -> GeneralizedMetricSpace {
    let mut points: Vec<Point> = [int(0), rat(1, 5), rat(1, 9), rat(1, 16)]
        .into_iter()
        .map(Point::at)
        .collect();
    points.extend(sample_interval(&rat(1, 2), &int(1), step).expect("valid interval"));
    let entries = [
        PairDistance::new("0", "1/9", rat(1, 10)),
        PairDistance::new("1/5", "1/16", rat(1, 10)),
        PairDistance::new("0", "1/5", rat(1, 2)),
        PairDistance::new("1/5", "1/9", rat(1, 2)),
        PairDistance::new("0", "1/16", rat(1, 20)),
        PairDistance::new("1/9", "1/16", rat(1, 20)),
    ];
    build_space(points, &entries, Fallback::SquaredDifference)
        .expect("example table is consistent")
        .with_claimed_s(Some(int(3)))
}

/// `T = 1/16` on `[1/2, 1]`, `0` elsewhere.
pub fn main_map() -> SelfMap {
    SelfMap::Pieces {
        pieces: vec![MapPiece {
            lo: rat(1, 2),
            hi: int(1),
            to: rat(1, 16),
        }],
        else_to: Some(int(0)),
    }
}

/// `k1 t` on `[0, 1]`, `k2 t` above.
fn two_slope(k1: Rational, k2: Rational) -> FunctionSpec {
    FunctionSpec::piecewise(vec![
        Piece::poly(int(0), Some(int(1)), &[int(0), k1]).closed(),
        Piece::poly(int(1), None, &[int(0), k2]),
    ])
}

/// Weight `t` on `[0, 1]`, `2t` above.
pub fn main_weight() -> FunctionSpec {
    two_slope(int(1), int(2))
}

/// Control `t/16` on `[0, 1]`, `t/8` above.
pub fn main_control() -> FunctionSpec {
    two_slope(rat(1, 16), rat(1, 8))
}

pub fn main_psi() -> FunctionSpec {
    FunctionSpec::linear(rat(3, 2))
}

pub fn main_spec() -> InstanceSpec {
    InstanceSpec {
        psi: main_psi(),
        weight_phi: main_weight(),
        control_phi: main_control(),
        f: FunctionSpec::cclass(1, &[]).expect("entry 1 exists"),
        s: int(3),
        variant: Variant::MMax,
    }
}

/// The worked contraction instance on `main_space(step)`.
pub fn main_instance(step: &Rational) -> ContractionInstance {
    ContractionInstance::new(main_space(step), main_map(), main_spec()).expect("worked example is well formed")
}

/// All sixteen C-class entries with compliant parameters.
pub fn cclass_catalog() -> Vec<FunctionSpec> {
    CCLASS_ENTRIES
        .map(|n| CClassEntry::new(n).expect("in range").default_spec())
        .collect()
}

/// `sqrt(x)` on `[0, 1]`, `x^2` above.
pub fn tripled_psi() -> FunctionSpec {
    FunctionSpec::piecewise(vec![
        Piece {
            from: int(0),
            to: Some(int(1)),
            include_to: true,
            terms: vec![crate::functions::Term {
                coef: int(1),
                exp: rat(1, 2),
            }],
        },
        Piece::poly(int(1), None, &[int(0), int(0), int(1)]),
    ])
}

/// `(psi, sqrt, s - t)`: monotone.
pub fn monotone_tripled() -> TripledSpec {
    TripledSpec {
        psi: tripled_psi(),
        phi: FunctionSpec::monomial(int(1), rat(1, 2)),
        f: FunctionSpec::cclass(1, &[]).expect("entry 1 exists"),
    }
}

/// `(psi, x^2, s - t)`: not monotone.
pub fn non_monotone_tripled() -> TripledSpec {
    TripledSpec {
        psi: tripled_psi(),
        phi: FunctionSpec::poly(&[int(0), int(0), int(1)]),
        f: FunctionSpec::cclass(1, &[]).expect("entry 1 exists"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(main_space(&main_default_step()).len(), 21);
        assert_eq!(ex2_space(&ex2_default_step()).len(), 15);
        assert_eq!(cclass_catalog().len(), 16);
    }

    #[test]
    fn tabulated_and_fallback_distances() {
        let x = main_space(&main_default_step());
        assert_eq!(x.distance("1/5", "1/9").unwrap(), &rat(1, 2));
        assert_eq!(x.distance("3/4", "1/2").unwrap(), &rat(1, 16));
        assert_eq!(x.distance("1/16", "0").unwrap(), &rat(1, 20));
        let e = ex2_space(&ex2_default_step());
        assert_eq!(e.distance("1/7", "1/4").unwrap(), &rat(6, 25));
        assert_eq!(e.distance("1/2", "1").unwrap(), &rat(1, 4));
    }
}
