use lattice_core::{coset_reps, intersection, quotient_index, Lattice2};
use proptest::prelude::*;

fn int_matrix() -> impl Strategy<Value = [[i64; 2]; 2]> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6)
        .prop_filter("full rank", |(a, b, c, d)| a * d - b * c != 0)
        .prop_map(|(a, b, c, d)| [[a, b], [c, d]])
}

proptest! {
    #[test]
    fn reps_are_a_transversal(c in int_matrix()) {
        let parent = Lattice2::hexagonal();
        let child = parent.sublattice(&c).unwrap();
        let q = coset_reps(&parent, &child).unwrap();
        let idx = quotient_index(&parent, &child).unwrap();
        prop_assert_eq!(q.len() as i64, idx);
        prop_assert_eq!(idx, (c[0][0] * c[1][1] - c[0][1] * c[1][0]).abs());
        for (n, r) in q.reps.iter().enumerate() {
            prop_assert_eq!(q.index_of(*r), n);
            // shifting by a child generator keeps the coset
            prop_assert_eq!(q.index_of([r[0] + c[0][0], r[1] + c[1][0]]), n);
            prop_assert_eq!(q.index_of([r[0] - c[0][1], r[1] - c[1][1]]), n);
        }
    }

    #[test]
    fn dual_index_matches(c in int_matrix()) {
        let parent = Lattice2::hexagonal();
        let child = parent.sublattice(&c).unwrap();
        prop_assert_eq!(
            quotient_index(&parent, &child).unwrap(),
            quotient_index(&child.reciprocal(), &parent.reciprocal()).unwrap()
        );
    }

    #[test]
    fn intersection_is_largest_common(a in int_matrix(), b in int_matrix()) {
        let z = Lattice2::square();
        let (la, lb) = (z.sublattice(&a).unwrap(), z.sublattice(&b).unwrap());
        let i = intersection(&z, &la, &lb).unwrap();
        prop_assert!(i.is_sublattice_of(&la) && i.is_sublattice_of(&lb));
        for x in -12i64..=12 {
            for y in -12i64..=12 {
                let p = z.point([x, y]);
                prop_assert_eq!(la.contains(&p) && lb.contains(&p), i.contains(&p));
            }
        }
    }
}
