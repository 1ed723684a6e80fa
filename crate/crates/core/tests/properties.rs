use pentropy::{Algebra, EntropySpec, MSet, Rat};
use proptest::prelude::*;

fn rat_in_unit(max_denom: i64) -> impl Strategy<Value = Rat> {
    (1..=max_denom).prop_flat_map(|q| (0..=q).prop_map(move |p| Rat::frac(p, q)))
}

fn raw_intervals() -> impl Strategy<Value = Vec<(Rat, Rat)>> {
    prop::collection::vec((rat_in_unit(24), rat_in_unit(24)), 0..6).prop_map(|v| {
        v.into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect()
    })
}

fn mset() -> impl Strategy<Value = MSet> {
    raw_intervals().prop_map(|raw| MSet::normalize(raw).unwrap())
}

// Partition from sorted cut points and a random atom assignment per cell.
fn algebra() -> impl Strategy<Value = Algebra> {
    (
        prop::collection::btree_set(1..24i64, 1..8),
        prop::collection::vec(0..4usize, 8),
    )
        .prop_map(|(cuts, owner)| {
            let mut points = vec![0];
            points.extend(cuts);
            points.push(24);
            let mut atoms = vec![Vec::new(); 4];
            for (k, w) in points.windows(2).enumerate() {
                atoms[owner[k % owner.len()]].push((Rat::frac(w[0], 24), Rat::frac(w[1], 24)));
            }
            let atoms = atoms
                .into_iter()
                .filter(|a| !a.is_empty())
                .map(|a| MSet::normalize(a).unwrap())
                .collect();
            Algebra::new(atoms).unwrap()
        })
}

proptest! {
    #[test]
    fn normalize_is_canonical(raw in raw_intervals()) {
        let s = MSet::normalize(raw.clone()).unwrap();
        prop_assert_eq!(MSet::normalize(s.intervals().to_vec()).unwrap(), s.clone());
        let mut rev = raw;
        rev.reverse();
        prop_assert_eq!(MSet::normalize(rev).unwrap(), s.clone());
        for w in s.intervals().windows(2) {
            prop_assert!(w[0].1 < w[1].0);
        }
    }

    #[test]
    fn boolean_laws(a in mset(), b in mset(), c in mset()) {
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.intersect(&b.union(&c)), a.intersect(&b).union(&a.intersect(&c)));
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersect(&b.complement()));
        prop_assert_eq!(a.symdiff(&b), a.difference(&b).union(&b.difference(&a)));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(
            a.union(&b).measure() + a.intersect(&b).measure(),
            a.measure() + b.measure()
        );
        prop_assert!(a.intersect(&b).is_subset(&a));
        prop_assert!(a.difference(&b).is_disjoint(&b));
    }

    #[test]
    fn darboux_split_takes_a_prefix(a in mset(), t in rat_in_unit(12)) {
        let theta = a.measure() * t;
        let head = a.darboux_split(&theta).unwrap();
        prop_assert_eq!(head.measure(), theta);
        prop_assert!(head.is_subset(&a));
        let tail = a.difference(&head);
        if let (Some((_, h)), Some(l)) = (head.intervals().last(), tail.leftmost()) {
            prop_assert!(h <= l);
        }
    }

    #[test]
    fn join_and_metric(a in algebra(), b in algebra()) {
        let j = a.join(&b);
        prop_assert_eq!(j.clone(), b.join(&a));
        prop_assert_eq!(j.join(&a), j.clone());
        let d = a.distance_d(&b);
        prop_assert!(!d.is_negative() && d <= Rat::one());
        prop_assert_eq!(d, b.distance_d(&a));
        prop_assert!(a.distance_d(&a).is_zero());
    }

    #[test]
    fn shannon_is_bounded_by_hartley(a in algebra()) {
        let h = EntropySpec::Shannon.eval(&a);
        prop_assert!(h >= -1e-12);
        prop_assert!(h <= EntropySpec::Hartley.eval(&a) + 1e-12);
    }
}
