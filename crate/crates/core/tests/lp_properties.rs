use moco_supported::lp::{Constraint, LinearProgram, LpStatus};
use moco_supported::{lp_feasible, lp_solve, Rational};
use proptest::prelude::*;

fn r(x: i64) -> Rational {
    Rational::from(x)
}

fn row(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| r(x)).collect()
}

fn matrix(max_m: usize, max_n: usize) -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>, Vec<i64>)> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(prop::collection::vec(-5i64..=5, n), m),
            prop::collection::vec(-6i64..=6, m),
            prop::collection::vec(-4i64..=6, n),
        )
    })
}

/// `min c·x, Ax ≥ b, x ≥ 0`.
fn primal(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> LinearProgram {
    let mut lp = LinearProgram::minimize(row(c));
    for (ai, &bi) in a.iter().zip(b) {
        lp.push(Constraint::ge(row(ai), r(bi)));
    }
    lp
}

/// `max b·y, Aᵀy ≤ c, y ≥ 0`, written out by hand.
fn dual(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> LinearProgram {
    let mut lp = LinearProgram::maximize(row(b));
    for (j, &cj) in c.iter().enumerate() {
        let col: Vec<i64> = a.iter().map(|ai| ai[j]).collect();
        lp.push(Constraint::le(row(&col), r(cj)));
    }
    lp
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strong_duality((a, b, c) in matrix(8, 6)) {
        let p = lp_solve(&primal(&a, &b, &c)).unwrap();
        let d = lp_solve(&dual(&a, &b, &c)).unwrap();
        match p.status {
            LpStatus::Optimal => {
                prop_assert_eq!(d.status, LpStatus::Optimal);
                prop_assert_eq!(&p.value, &d.value);
            }
            LpStatus::Unbounded => prop_assert_eq!(d.status, LpStatus::Infeasible),
            LpStatus::Infeasible => prop_assert_ne!(d.status, LpStatus::Optimal),
        }
        if d.status == LpStatus::Unbounded {
            prop_assert_eq!(p.status, LpStatus::Infeasible);
        }
    }

    #[test]
    fn optimal_solutions_are_feasible_and_attain_the_value((a, b, c) in matrix(8, 6)) {
        let lp = primal(&a, &b, &c);
        let out = lp_solve(&lp).unwrap();
        if let (Some(x), Some(v)) = (&out.solution, &out.value) {
            prop_assert!(lp.is_feasible(x));
            prop_assert_eq!(&moco_supported::rational::dot(&lp.objective, x), v);
        }
    }

    #[test]
    fn solving_is_deterministic((a, b, c) in matrix(6, 5)) {
        let lp = primal(&a, &b, &c);
        prop_assert_eq!(lp_solve(&lp).unwrap(), lp_solve(&lp).unwrap());
    }

    #[test]
    fn feasibility_agrees_with_phase_one((a, b, _c) in matrix(6, 5)) {
        let n = a[0].len();
        let cs: Vec<Constraint> = a.iter().zip(&b).map(|(ai, &bi)| Constraint::ge(row(ai), r(bi))).collect();
        let mut lp = LinearProgram::minimize(vec![Rational::zero(); n]);
        for c in &cs {
            lp.push(c.clone());
        }
        for j in 0..n {
            lp.set_free(j);
        }
        let witness = lp_feasible(&cs, n).unwrap();
        let status = lp_solve(&lp).unwrap().status;
        prop_assert_eq!(witness.is_some(), status == LpStatus::Optimal);
        if let Some(x) = witness {
            prop_assert!(cs.iter().all(|c| c.is_satisfied_by(&x)));
        }
    }

    #[test]
    fn rationals_stay_reduced(n1 in -1000i64..1000, d1 in 1i64..1000, n2 in -1000i64..1000, d2 in 1i64..1000) {
        let x = Rational::new(n1, d1);
        let y = Rational::new(n2, d2);
        let mut results = vec![&x + &y, &x - &y, &x * &y];
        if !y.is_zero() {
            results.push(&x / &y);
        }
        for z in results {
            prop_assert!(z.denom() > &num_bigint::BigInt::from(0));
            prop_assert_eq!(num_integer::Integer::gcd(z.numer(), z.denom()), num_bigint::BigInt::from(1));
            prop_assert_eq!(z.to_string().parse::<Rational>().unwrap(), z);
        }
    }
}

#[test]
fn strict_witness_program_for_the_first_point() {
    // max t  s.t.  λ·(y' − y¹) ≥ 0 for y' ≠ y¹,  λ_i ≥ t,  Σλ = 1, over (λ, t).
    let pts = [[2, 9, 1], [3, 6, 1], [8, 3, 1], [6, 5, 1]];
    let mut lp = LinearProgram::maximize(row(&[0, 0, 0, 1]));
    for q in &pts[1..] {
        let d: Vec<i64> = (0..3).map(|k| q[k] - pts[0][k]).collect();
        lp.push(Constraint::ge(row(&[d[0], d[1], d[2], 0]), r(0)));
    }
    for i in 0..3 {
        let mut c = vec![0; 4];
        c[i] = 1;
        c[3] = -1;
        lp.push(Constraint::ge(row(&c), r(0)));
    }
    lp.push(Constraint::eq(row(&[1, 1, 1, 0]), r(1)));
    lp.set_free(3);
    let out = lp_solve(&lp).unwrap();
    assert_eq!(out.status, LpStatus::Optimal);
    assert!(out.value.unwrap().is_positive());
}

#[test]
fn fourth_point_system_has_the_third_axis_as_witness() {
    // λ·(y' − y⁴) ≥ 0, λ ≥ 0, Σλ = 1 pins λ to (0, 0, 1).
    let diffs = [[-4, 4, 0], [-3, 1, 0], [2, -2, 0]];
    let mut cs: Vec<Constraint> = diffs.iter().map(|d| Constraint::ge(row(d), r(0))).collect();
    for i in 0..3 {
        let mut e = vec![0; 3];
        e[i] = 1;
        cs.push(Constraint::ge(row(&e), r(0)));
    }
    cs.push(Constraint::eq(row(&[1, 1, 1]), r(1)));
    assert_eq!(lp_feasible(&cs, 3).unwrap(), Some(row(&[0, 0, 1])));
}
