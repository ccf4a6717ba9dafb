use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use proptest::prelude::*;

use polyalg::enumerate::enumerate_fixed_polyominoes;
use polyalg::hseries::{descent_word, h_by_descents, h_by_fvector, h_by_multichains};
use polyalg::lattice::{build_lattice, chain_f_vector, linear_extension, max_chains, multichain_count};
use polyalg::lproject::ferrers_projection;
use polyalg::polyomino::join_irreducibles;
use polyalg::rook::{psi, rook_polynomial, rook_polynomial_bruteforce, verify_theorem};
use polyalg::{classify, parse_grid, vertex_set, CellRef, Point, Polyomino};

fn upto(n: usize) -> Vec<Polyomino> {
    (1..=n)
        .flat_map(|k| enumerate_fixed_polyominoes(k).unwrap())
        .collect()
}

fn convex_sublattice_upto(n: usize) -> Vec<Polyomino> {
    upto(n)
        .into_iter()
        .filter(|p| classify(p).convex_sublattice())
        .collect()
}

/// Grow every (n-1)-cell set by one neighbor and dedupe after translating to
/// the origin. Shares nothing with the Redelmeier search.
fn naive_fixed(n: usize) -> BTreeSet<Vec<(i32, i32)>> {
    let normalize = |cells: &BTreeSet<(i32, i32)>| -> Vec<(i32, i32)> {
        let mx = cells.iter().map(|c| c.0).min().unwrap();
        let my = cells.iter().map(|c| c.1).min().unwrap();
        let mut v: Vec<_> = cells.iter().map(|&(x, y)| (x - mx, y - my)).collect();
        v.sort();
        v
    };
    let mut level: BTreeSet<Vec<(i32, i32)>> = BTreeSet::from([vec![(0, 0)]]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for shape in &level {
            let set: BTreeSet<(i32, i32)> = shape.iter().copied().collect();
            for &(x, y) in shape {
                for nb in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                    if !set.contains(&nb) {
                        let mut grown = set.clone();
                        grown.insert(nb);
                        next.insert(normalize(&grown));
                    }
                }
            }
        }
        level = next;
    }
    level
}

#[test]
fn redelmeier_matches_naive_generator() {
    for n in 1..=7 {
        let naive = naive_fixed(n);
        let fast: BTreeSet<Vec<(i32, i32)>> = enumerate_fixed_polyominoes(n)
            .unwrap()
            .iter()
            .map(|p| p.cells().iter().map(|c| (c.i - 1, c.j - 1)).collect())
            .collect();
        assert_eq!(fast, naive, "n = {n}");
    }
}

#[test]
fn grid_and_json_round_trip_up_to_eight() {
    for p in upto(8) {
        assert_eq!(parse_grid(&p.to_grid()).unwrap(), p);
        assert_eq!(Polyomino::from_json(&p.to_json()).unwrap(), p);
    }
}

#[test]
fn thin_matches_quadruple_scan() {
    for p in upto(8) {
        let has_block = p.cells().iter().any(|c| {
            [(0, 0), (1, 0), (0, 1), (1, 1)]
                .iter()
                .all(|(di, dj)| p.contains(CellRef::new(c.i + di, c.j + dj)))
        });
        assert_eq!(classify(&p).thin, !has_block, "\n{p}");
    }
}

#[test]
fn class_implications() {
    for p in upto(8) {
        let c = classify(&p);
        assert!(c.connected);
        if c.vertex_sublattice {
            let v = vertex_set(&p);
            assert!(v.contains(&Point::new(0, 0)));
            assert!(v.contains(&Point::new(p.width(), p.height())));
        } else {
            let (a, b) = c.sublattice_witness.unwrap();
            let v = vertex_set(&p);
            assert!(!v.contains(&a.meet(b)) || !v.contains(&a.join(b)));
        }
        if c.hv_convex && c.vertex_sublattice {
            assert!(c.simple, "\n{p}");
        }
        if c.l_convex {
            assert!(c.hv_convex);
        }
    }
}

#[test]
fn sublattice_rank_and_irreducible_count() {
    for p in upto(8).into_iter().filter(|p| classify(p).vertex_sublattice) {
        let lattice = build_lattice(&p).unwrap();
        let irreducibles = lattice.join_irreducibles();
        assert_eq!(irreducibles.len(), (p.width() + p.height()) as usize, "\n{p}");
        assert_eq!(lattice.rank(), irreducibles.len());
        for &v in lattice.elements() {
            let join = irreducibles
                .iter()
                .filter(|q| q.below(v))
                .fold(lattice.bottom(), |acc, q| acc.join(*q));
            assert_eq!(join, v, "\n{p}");
        }
    }
}

#[test]
fn birkhoff_structure() {
    for p in convex_sublattice_upto(8) {
        let lattice = build_lattice(&p).unwrap();
        let ji = join_irreducibles(&p).unwrap();
        let boundary: BTreeSet<Point> = ji.iter().collect();
        let from_covers: BTreeSet<Point> = lattice.join_irreducibles().into_iter().collect();
        assert_eq!(boundary, from_covers, "\n{p}");
        assert_eq!(ji.len(), (p.width() + p.height()) as usize);
        assert!(ji.left.windows(2).all(|w| w[0].below(w[1])));
        assert!(ji.bottom.windows(2).all(|w| w[0].below(w[1])));
        for &v in lattice.elements() {
            let join = ji
                .iter()
                .filter(|q| q.below(v))
                .fold(lattice.bottom(), |acc, q| acc.join(q));
            assert_eq!(join, v, "\n{p}");
        }
        for a in ji.iter() {
            for b in ji.iter() {
                if !a.below(b) && !b.below(a) {
                    let a_left = ji.left.contains(&a);
                    let b_left = ji.left.contains(&b);
                    assert_ne!(a_left, b_left, "{a:?} {b:?}\n{p}");
                }
            }
        }
    }
}

#[test]
fn lattice_counts_agree() {
    for p in convex_sublattice_upto(8) {
        let lattice = build_lattice(&p).unwrap();
        let chains: Vec<_> = max_chains(&lattice).collect();
        let distinct: HashSet<_> = chains.iter().collect();
        assert_eq!(distinct.len(), chains.len());
        assert!(chains.windows(2).all(|w| w[0].step_word() < w[1].step_word()));
        let f = chain_f_vector(&lattice);
        assert_eq!(f.last(), Some(&BigUint::from(chains.len())));
        assert_eq!(multichain_count(&lattice, 1), BigUint::from(lattice.len()));
        for k in 0..6 {
            assert!(multichain_count(&lattice, k) <= multichain_count(&lattice, k + 1));
        }
        let h = h_by_multichains(&p).unwrap();
        assert_eq!(h.total(), chains.len() as u64);
        assert_eq!(h.coeff(0), 1);
        assert_eq!(h.coeff(1), (lattice.len() - lattice.rank() - 1) as u64);
    }
}

#[test]
fn h_is_independent_of_omega() {
    for p in convex_sublattice_upto(8) {
        let reference = h_by_fvector(&p).unwrap();
        for seed in 0..6 {
            let omega = linear_extension(&p, seed).unwrap();
            assert_eq!(h_by_descents(&p, &omega).unwrap(), reference, "seed {seed}\n{p}");
        }
    }
}

#[test]
fn psi_invariants_and_dominance() {
    for p in convex_sublattice_upto(8) {
        let lattice = build_lattice(&p).unwrap();
        let ji = join_irreducibles(&p).unwrap();
        for seed in [0, 1, 2] {
            let omega = linear_extension(&p, seed).unwrap();
            let mut image = BTreeSet::new();
            for chain in max_chains(&lattice) {
                let word = descent_word(&chain, &ji, &omega);
                let config = psi(&chain, &ji, &omega);
                assert_eq!(config.len(), word.descents.len());
                let cells: Vec<_> = config.cells().iter().collect();
                for (k, a) in cells.iter().enumerate() {
                    assert!(p.contains(**a));
                    for b in &cells[k + 1..] {
                        assert!(a.i != b.i && a.j != b.j);
                    }
                }
                assert!(word.descents.iter().all(|i| !word.descents.contains(&(i + 1))));
                image.insert(config);
            }
            assert_eq!(image.len(), max_chains(&lattice).count(), "seed {seed}\n{p}");
        }
        let rep = verify_theorem(&p).unwrap();
        assert!(rep.dominance);
        if !rep.thin {
            assert!(rep.strict_at_2);
        }
    }
}

#[test]
fn rook_recursion_matches_bruteforce() {
    for p in upto(7) {
        assert_eq!(
            rook_polynomial(&p).unwrap(),
            rook_polynomial_bruteforce(&p),
            "\n{p}"
        );
    }
}

#[test]
fn projection_is_idempotent_and_preserves_rooks() {
    for p in upto(8).into_iter().filter(|p| classify(p).l_convex) {
        let once = ferrers_projection(&p).unwrap();
        assert_eq!(ferrers_projection(&once).unwrap(), once);
        assert_eq!(rook_polynomial(&once).unwrap(), rook_polynomial(&p).unwrap());
        assert_eq!(classify(&once).thin, classify(&p).thin, "\n{p}");
    }
}

#[test]
fn decreasing_rows_break_the_sublattice() {
    // rows sorted the other way (longest at the bottom) for the L-tromino
    let p = parse_grid("#.\n##").unwrap();
    assert!(!classify(&p).vertex_sublattice);
}

fn arb_cells() -> impl Strategy<Value = Vec<(i32, i32)>> {
    prop::collection::vec((0..6i32, 0..6i32), 1..14)
}

proptest! {
    #[test]
    fn random_sets_parse_consistently(cells in arb_cells()) {
        if let Ok(p) = Polyomino::new(cells.clone()) {
            prop_assert_eq!(parse_grid(&p.to_grid()).unwrap(), p.clone());
            prop_assert_eq!(p.cells().iter().map(|c| c.i).min(), Some(1));
            prop_assert_eq!(p.cells().iter().map(|c| c.j).min(), Some(1));
            let distinct: BTreeSet<_> = cells.into_iter().collect();
            prop_assert_eq!(p.len(), distinct.len());
        }
    }

    #[test]
    fn random_labelings_are_linear_extensions(rows in prop::collection::vec(1..5i32, 1..5), seed in any::<u64>()) {
        // left-aligned rows weakly increasing upward give a sublattice
        let mut rows = rows;
        rows.sort_unstable();
        let cells = rows.iter().enumerate().flat_map(|(j, &len)| (1..=len).map(move |i| (i, j as i32 + 1)));
        let p = Polyomino::new(cells).unwrap();
        let omega = linear_extension(&p, seed).unwrap();
        prop_assert!(polyalg::lattice::OmegaLabeling::from_labels(omega.labels().clone()).is_ok());
        prop_assert_eq!(omega.len(), (p.width() + p.height()) as usize);
    }
}
