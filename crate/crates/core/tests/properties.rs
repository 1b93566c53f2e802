use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use num_bigint::BigInt;
use treelike::abpoly::BivarPoly;
use treelike::bijection::{
    colored_words, corner_transfer_delta, cut_at_corner, glue, m_star, m_star_inverse, phi,
    phi_inverse, run_to_triplet, triplet_words_to_run, CornerRunBijection, CycleForm,
    MarkedRunPermutation,
};
use treelike::enumerate::tree_like_tableaux;
use treelike::{BorderPath, PermutationTableau, Step, TreeLikeTableau};

const MAX_N: usize = 6;

fn pool() -> &'static Vec<Vec<TreeLikeTableau>> {
    static POOL: OnceLock<Vec<Vec<TreeLikeTableau>>> = OnceLock::new();
    POOL.get_or_init(|| {
        (0..=MAX_N)
            .map(|n| {
                if n == 0 {
                    Vec::new()
                } else {
                    tree_like_tableaux(n).unwrap().collect()
                }
            })
            .collect()
    })
}

fn bijection() -> &'static CornerRunBijection {
    static BIJ: OnceLock<CornerRunBijection> = OnceLock::new();
    BIJ.get_or_init(|| CornerRunBijection::new(MAX_N).unwrap())
}

fn tableau() -> impl Strategy<Value = TreeLikeTableau> {
    (1..=MAX_N, any::<Index>()).prop_map(|(n, i)| i.get(&pool()[n]).clone())
}

fn tableau_and_corner() -> impl Strategy<Value = (TreeLikeTableau, treelike::Cell)> {
    (tableau(), any::<Index>()).prop_map(|(t, i)| {
        let c = *i.get(&t.path().corners());
        (t, c)
    })
}

fn permutation(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
}

fn poly() -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -20i64..20), 0..6).prop_map(|terms| {
        terms.into_iter().fold(BivarPoly::zero(), |p, (i, j, c)| {
            p + BivarPoly::monomial(i, j, c)
        })
    })
}

fn path() -> impl Strategy<Value = BorderPath> {
    prop::collection::vec(any::<bool>(), 1..20).prop_map(|bits| {
        BorderPath::new(
            bits.into_iter()
                .map(|s| if s { Step::South } else { Step::West })
                .collect(),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn text_form_round_trips(t in tableau()) {
        prop_assert_eq!(TreeLikeTableau::parse(&t.to_text()).unwrap(), t.clone());
        let p = phi(&t);
        prop_assert_eq!(PermutationTableau::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn phi_is_inverted(t in tableau()) {
        let p = phi(&t);
        prop_assert_eq!(p.len(), t.size());
        prop_assert_eq!(phi_inverse(&p).unwrap(), t);
    }

    #[test]
    fn phi_transfers_corners(t in tableau()) {
        prop_assert_eq!(
            phi(&t).num_corners() + corner_transfer_delta(&t),
            t.path().num_corners()
        );
    }

    #[test]
    fn transpose_swaps_statistics(t in tableau()) {
        let u = t.transpose();
        prop_assert_eq!(u.transpose(), t.clone());
        let (s, r) = (t.stats(), u.stats());
        prop_assert_eq!((s.top, s.first_row_points), (r.left, r.first_column_points));
        prop_assert_eq!((s.left, s.first_column_points), (r.top, r.first_row_points));
        prop_assert_eq!(s.corners, r.corners);
    }

    #[test]
    fn stat_record_is_consistent(t in tableau()) {
        let s = t.stats();
        prop_assert_eq!(s.corners, s.occupied_corners + s.non_occupied_corners);
        prop_assert_eq!(s.top + 1, s.first_row_points);
        prop_assert_eq!(s.left + 1, s.first_column_points);
    }

    #[test]
    fn cut_meets_its_contracts((t, c) in tableau_and_corner()) {
        let cut = cut_at_corner(&t, c).unwrap();
        prop_assert_eq!(cut.check().unwrap(), t.size());
        prop_assert_eq!(cut.left_size() + cut.right_size() + 1, t.size());
        // An absent side leaves the tree a single row or column.
        let width = cut.left.as_ref().map_or(0, |l| l.top() + 1);
        let height = cut.right.as_ref().map_or(0, |r| r.left() + 1);
        prop_assert_eq!(cut.nat.width(), width);
        prop_assert_eq!(cut.nat.height(), height);
        prop_assert_eq!(glue(&cut).unwrap(), (t, c));
    }

    #[test]
    fn corner_to_run_lands_on_runs((t, c) in tableau_and_corner()) {
        let p = bijection().corner_to_run(&t, c).unwrap();
        prop_assert_eq!(p.perm().len(), t.size());
        prop_assert_eq!(bijection().run_to_corner(&p).unwrap(), (t, c));
    }

    #[test]
    fn cycle_form_round_trips(perm in permutation(12)) {
        let c = CycleForm::from_one_line(&perm).unwrap();
        prop_assert_eq!(c.to_one_line(), perm);
        prop_assert_eq!(c.to_string().parse::<CycleForm>().unwrap(), c);
    }

    #[test]
    fn runs_round_trip(perm in permutation(10), pick in any::<Index>()) {
        let p = treelike::counting::Permutation::new(perm.clone()).unwrap();
        let runs = p.runs_of_size_one();
        prop_assume!(!runs.is_empty());
        let marked = MarkedRunPermutation::new(perm, *pick.get(&runs)).unwrap();
        let t = run_to_triplet(&marked).unwrap();
        prop_assert_eq!(t.size(), marked.perm().len());
        prop_assert_eq!(triplet_words_to_run(&t).unwrap(), marked);
    }

    #[test]
    fn m_star_is_undone(h in 0usize..4, w in 0usize..4, pick in any::<Index>()) {
        let words = colored_words(h, w);
        let m = pick.get(&words);
        let s = m_star(m);
        prop_assert_eq!(&m_star_inverse(&s.letters, h, w).unwrap(), m);
    }

    #[test]
    fn poly_ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p - &q) + &q, p.clone());
        prop_assert_eq!(p.swap().swap(), p.clone());
    }

    #[test]
    fn poly_eval_is_a_homomorphism(p in poly(), q in poly(), a in -5i64..5, b in -5i64..5) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!((&p * &q).eval(&a, &b), p.eval(&a, &b) * q.eval(&a, &b));
        prop_assert_eq!(p.swap().eval(&a, &b), p.eval(&b, &a));
    }

    #[test]
    fn path_round_trips(p in path()) {
        prop_assert_eq!(p.to_string().parse::<BorderPath>().unwrap(), p.clone());
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        let steps = p.steps();
        let corners: Vec<usize> = (1..steps.len())
            .filter(|&i| steps[i - 1] == Step::South && steps[i] == Step::West)
            .collect();
        let found: Vec<usize> = p.corners().iter().map(|c| c.row).collect();
        prop_assert_eq!(found, corners);
        prop_assert!(p.corners().iter().all(|c| c.col == c.row + 1));
    }
}
