use proptest::prelude::*;

use rp2_ido::exactalg::{int, nullspace, rank, rat, solve_parametric, LinParam, ParamSolution, Rat, RatMatrix};
use rp2_ido::fiber::{parity_shift, Parity};
use rp2_ido::ido::dpi;
use rp2_ido::polyweyl::{FiberMap, Poly, Section, WeylOp};
use rp2_ido::sl3::{bracket, GElt, BASIS_NAMES};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn fiber_map(m: u32) -> impl Strategy<Value = FiberMap> {
    let n = m as usize + 1;
    prop::collection::vec(prop::collection::vec(small_rat(), n), n)
        .prop_map(move |rows| FiberMap::from_matrix(m, m, rows))
}

fn weyl_op(m: u32) -> impl Strategy<Value = WeylOp> {
    prop::collection::vec(((0u32..=2, 0u32..=2, 0u32..=2, 0u32..=2), fiber_map(m)), 1..4).prop_map(move |terms| {
        let mut op = WeylOp::zero(m, m);
        for (key, f) in terms {
            op.add_term(key, &f);
        }
        op
    })
}

fn section(m: u32) -> impl Strategy<Value = Section> {
    prop::collection::vec(prop::collection::vec(((0u32..=3, 0u32..=3), small_rat()), 0..4), m as usize + 1)
        .prop_map(move |comps| {
            let polys = comps
                .into_iter()
                .map(|terms| {
                    let mut p = Poly::zero();
                    for ((a, b), c) in terms {
                        p.add_term(a, b, c);
                    }
                    p
                })
                .collect();
            Section::new(m, polys)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_product_is_associative(a in weyl_op(1), b in weyl_op(1), c in weyl_op(1)) {
        let left = a.weyl_mul(&b).unwrap().weyl_mul(&c).unwrap();
        let right = a.weyl_mul(&b.weyl_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn weyl_product_acts_by_composition(a in weyl_op(1), b in weyl_op(1), s in section(1)) {
        let ab = a.weyl_mul(&b).unwrap();
        prop_assert_eq!(ab.apply(&s).unwrap(), a.apply(&b.apply(&s).unwrap()).unwrap());
    }

    #[test]
    fn rank_plus_nullity(rows in prop::collection::vec(prop::collection::vec(small_rat(), 5), 1..6)) {
        let m = RatMatrix::from_dense(5, &rows);
        let null = nullspace(&m);
        prop_assert_eq!(rank(&m) + null.len(), 5);
        for v in &null {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn parametric_solver_finds_planted_root(root in small_rat(), slopes in prop::collection::vec(1i64..=5, 1..4)) {
        // (λ - root) s_i in a single column: singular exactly at λ = root
        let rows: Vec<Vec<LinParam>> =
            slopes.iter().map(|&s| vec![LinParam::new(-&root * int(s), int(s))]).collect();
        match solve_parametric(&rows, 1) {
            ParamSolution::Finite(roots) => {
                prop_assert_eq!(roots.len(), 1);
                prop_assert_eq!(&roots[0].lambda, &root);
                prop_assert_eq!(roots[0].nullspace.len(), 1);
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn parity_shift_is_additive(a in 0u32..8, b in 0u32..8, plus in any::<bool>()) {
        let alpha = if plus { Parity::Plus } else { Parity::Minus };
        prop_assert_eq!(parity_shift(parity_shift(alpha, a), b), parity_shift(alpha, a + b));
        prop_assert_eq!(parity_shift(parity_shift(alpha, a), a), alpha);
    }
}

#[test]
fn dpi_is_a_lie_algebra_homomorphism() {
    let basis = GElt::basis();
    for m in 0..=3 {
        for lambda in [int(0), int(1), rat(-1, 2)] {
            for i in 0..8 {
                for j in (i + 1)..8 {
                    let lhs = dpi(&basis[i], m, &lambda).commutator(&dpi(&basis[j], m, &lambda)).unwrap();
                    let rhs = dpi(&bracket(&basis[i], &basis[j]), m, &lambda);
                    assert_eq!(lhs, rhs, "[{}, {}] at m = {m}, λ = {lambda}", BASIS_NAMES[i], BASIS_NAMES[j]);
                }
            }
        }
    }
}
