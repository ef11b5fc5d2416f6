use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use replica_core::jordan::{eigenstructure, is_nilpotent_matrix, is_semisimple, jordan_decompose, power_vanishes};
use replica_core::liealg::{combination, is_subalgebra, LieSubalgebra};
use replica_core::ratlinalg::rational::{self, frac, int};
use replica_core::ratlinalg::{
    charpoly, integer_kernel, kernel, minpoly, rref, span_contains, QMatrix, QPoly, Rational, Subspace,
};
use replica_core::replica::replica;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| frac(p, q))
}

fn matrix(max_dim: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(rational(), n * n).prop_map(move |v| QMatrix::from_flat(n, v).unwrap())
    })
}

fn matrix_of_dim(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| QMatrix::from_fn(n, |i, j| int(v[i * n + j])))
}

/// Unit upper-triangular times unit lower-triangular, so determinant 1.
fn unimodular(n: usize) -> impl Strategy<Value = QMatrix> {
    (prop::collection::vec(-2i64..=2, n * n), prop::collection::vec(-2i64..=2, n * n)).prop_map(move |(u, l)| {
        let up = QMatrix::from_fn(n, |i, j| {
            if i == j {
                int(1)
            } else if i < j {
                int(u[i * n + j])
            } else {
                int(0)
            }
        });
        let lo = QMatrix::from_fn(n, |i, j| {
            if i == j {
                int(1)
            } else if i > j {
                int(l[i * n + j])
            } else {
                int(0)
            }
        });
        &up * &lo
    })
}

fn rows(max_rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rational(), cols), 0..=max_rows)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rational_text_roundtrip(r in rational()) {
        prop_assert_eq!(rational::parse(&rational::format(&r)).unwrap(), r);
    }

    #[test]
    fn rref_is_idempotent(rs in rows(5, 4)) {
        let once = rref(&rs, 4);
        let again = rref(&once.matrix, 4);
        prop_assert_eq!(&once.matrix, &again.matrix);
        prop_assert_eq!(once.rank, again.rank);
    }

    #[test]
    fn rank_plus_nullity(rs in rows(5, 5)) {
        let r = rref(&rs, 5).rank;
        let k = kernel(&rs, 5);
        prop_assert_eq!(r + k.len(), 5);
        for v in &k {
            for row in &rs {
                let s: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                prop_assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn charpoly_is_conjugation_invariant((x, p) in (2usize..=4).prop_flat_map(|n| (matrix_of_dim(n), unimodular(n)))) {
        let p_inv = p.inverse().unwrap();
        let y = &(&p * &x) * &p_inv;
        prop_assert_eq!(charpoly(&x), charpoly(&y));
        prop_assert_eq!(minpoly(&x), minpoly(&y));
    }

    #[test]
    fn minpoly_divides_charpoly_and_annihilates(x in matrix(4)) {
        let mp = minpoly(&x);
        let cp = charpoly(&x);
        prop_assert!(mp.is_monic());
        prop_assert!(mp.divides(&cp));
        prop_assert!(mp.eval_matrix(&x).is_zero());
        prop_assert!(cp.eval_matrix(&x).is_zero());
    }

    #[test]
    fn span_is_closed_under_combination(
        gens in prop::collection::vec(matrix_of_dim(3), 1..=4),
        coeffs in prop::collection::vec(rational(), 4),
    ) {
        let s = Subspace::span(3, &gens).unwrap();
        let c = combination(3, &gens, &coeffs[..gens.len()]);
        prop_assert!(span_contains(&s, &c).unwrap());
        prop_assert_eq!(Subspace::span(3, s.basis()).unwrap(), s);
    }

    #[test]
    fn jordan_invariants(x in matrix(4)) {
        let jp = jordan_decompose(&x);
        prop_assert_eq!(&(&jp.semisimple + &jp.nilpotent), &x);
        prop_assert!((&(&jp.semisimple * &jp.nilpotent) - &(&jp.nilpotent * &jp.semisimple)).is_zero());
        prop_assert!(is_semisimple(&jp.semisimple));
        prop_assert!(power_vanishes(&jp.nilpotent));
        prop_assert!(is_nilpotent_matrix(&jp.nilpotent));
        prop_assert_eq!(jp.semisimple_poly.eval_matrix(&x), jp.semisimple.clone());
        // idempotent on its own parts
        prop_assert_eq!(jordan_decompose(&jp.semisimple).semisimple, jp.semisimple.clone());
        prop_assert!(jordan_decompose(&jp.nilpotent).semisimple.is_zero());
    }

    #[test]
    fn eigenprojections_reconstruct(d in prop::collection::vec(-3i64..=3, 1..=4), p in unimodular(4)) {
        let n = d.len();
        let p = QMatrix::from_fn(n, |i, j| p[(i, j)].clone());
        if let Some(p_inv) = p.inverse() {
            let x = &(&p * &QMatrix::diagonal(&d.iter().map(|&v| int(v)).collect::<Vec<_>>())) * &p_inv;
            let es = eigenstructure(&x).unwrap();
            prop_assert_eq!(es.reconstruct(), x);
            let total = es.projections.iter().fold(QMatrix::zero(n), |acc, q| &acc + q);
            prop_assert_eq!(total, QMatrix::identity(n));
            for q in &es.projections {
                prop_assert_eq!(&(q * q), q);
            }
        }
    }

    #[test]
    fn replica_invariants(x in matrix(3)) {
        match replica(&x) {
            Ok(r) => {
                let jp = jordan_decompose(&x);
                prop_assert!(r.total.contains(&x).unwrap());
                prop_assert!(r.total.contains(&jp.semisimple).unwrap());
                prop_assert!(r.total.contains(&jp.nilpotent).unwrap());
                prop_assert!(r.nilpotent_replica.dim() <= 1);
                prop_assert!(is_subalgebra(&r.total));
                for b in r.semisimple_replica.basis() {
                    prop_assert!(is_semisimple(b));
                    prop_assert!((&(b * &x) - &(&x * b)).is_zero());
                }
                // every relation p annihilates the eigenvalues
                let es = eigenstructure(&jp.semisimple).unwrap();
                for p in r.lattice.basis() {
                    let s: Rational = p.iter().zip(&es.eigenvalues).map(|(a, l)| Rational::from(a.clone()) * l).sum();
                    prop_assert!(s.is_zero());
                }
            }
            Err(e) => prop_assert_eq!(e.kind(), "SplitFailure"),
        }
    }

    #[test]
    fn integer_kernel_contains_small_relations(v in prop::collection::vec(-4i64..=4, 1..=3)) {
        let row = vec![v.iter().map(|&x| int(x)).collect::<Vec<_>>()];
        let lat = integer_kernel(&row, v.len());
        let d = v.len();
        let mut p = vec![-4i64; d];
        loop {
            if p.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() == 0 {
                prop_assert!(lat.contains(&p.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()));
            }
            let mut k = 0;
            while k < d && p[k] == 4 { p[k] = -4; k += 1; }
            if k == d { break; }
            p[k] += 1;
        }
        let expected_rank = if v.iter().all(|&x| x == 0) { d } else { d - 1 };
        prop_assert_eq!(lat.rank(), expected_rank);
    }

    #[test]
    fn generated_algebras_satisfy_jacobi(gens in prop::collection::vec(matrix_of_dim(2), 1..=2)) {
        let l = LieSubalgebra::generate(2, &gens).unwrap();
        prop_assert!(is_subalgebra(l.space()));
        for g in &gens {
            prop_assert!(l.contains(g).unwrap());
        }
        let sc = l.constants();
        prop_assert!(sc.is_antisymmetric());
        prop_assert!(sc.satisfies_jacobi());
    }

    #[test]
    fn poly_division_identity(
        a in prop::collection::vec(rational(), 1..=5),
        b in prop::collection::vec(rational(), 1..=3),
    ) {
        let (a, b) = (QPoly::new(a), QPoly::new(b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }
}
