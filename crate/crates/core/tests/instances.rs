use dimgap::collapse::FaceQuery;
use dimgap::collapse::{cdim, cols, verify_schedule, SearchOptions};
use dimgap::generators::{catalog, theorem_a_instance, InstanceData, NamedInstance};
use dimgap::homology::{betti, ldim, LerayOptions};
use dimgap::nerve::{mes_collapse_schedule, nerve};

fn measure(instance: &NamedInstance, key: &str) -> i64 {
    match &instance.data {
        InstanceData::Complex(k) => match key {
            "f0" => k.f_vector().counts()[0] as i64,
            "f1" => k.f_vector().counts()[1] as i64,
            "cols" => cols(k).unwrap() as i64,
            "ldim" => ldim(k, &LerayOptions::default()).unwrap().ldim as i64,
            "betti_total" => betti(k).0.values().sum::<usize>() as i64,
            "cdim" => {
                let c = cdim(k, &SearchOptions::default()).unwrap();
                assert_eq!(c.lower(), c.upper(), "{} cdim undecided", instance.name);
                c.lower() as i64
            }
            _ => panic!("unknown key {key}"),
        },
        InstanceData::Family(f) => match key {
            "sets" => f.len() as i64,
            "nerve_f0" => nerve(f).num_vertices() as i64,
            _ => panic!("unknown key {key}"),
        },
    }
}

#[test]
fn catalog_expectations_hold() {
    for instance in catalog().unwrap() {
        for (key, expected) in &instance.expected {
            assert_eq!(measure(&instance, key), expected.value, "{} {key}", instance.name);
        }
    }
}

#[test]
fn theorem_a_schedules_verify() {
    for d in 1..=3 {
        let family = theorem_a_instance(d).unwrap();
        assert_eq!(family.max_set_size(), d);
        let s = mes_collapse_schedule(&family, Some(d)).unwrap();
        assert_eq!(s.schedule.d, d);
        assert!(verify_schedule(&family, &s.schedule).is_valid(), "d = {d}");
        assert!(s.schedule.steps.iter().all(|st| st.free_face.len() <= d));
    }
    // the d = 3 nerve is only ever queried implicitly
    assert_eq!(theorem_a_instance(3).unwrap().face_count(), skeleton_nerve_faces(6, 2));
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Subfamilies of the faces of the k-skeleton of the m-simplex with a common
/// vertex, by inclusion–exclusion over the common vertex set.
fn skeleton_nerve_faces(m: u64, k: u64) -> u128 {
    let n = m + 1;
    let mut total: i128 = 0;
    for e in 1..=k + 1 {
        let containing: u128 = (0..=k + 1 - e).map(|j| binom(n - e, j)).sum();
        let term = binom(n, e) as i128 * ((1i128 << containing) - 1);
        total += if e % 2 == 1 { term } else { -term };
    }
    total as u128
}

#[test]
fn theorem_a_small_nerves_verify_explicitly() {
    for d in 1..=2 {
        let family = theorem_a_instance(d).unwrap();
        let s = mes_collapse_schedule(&family, Some(d)).unwrap();
        assert!(verify_schedule(&nerve(&family), &s.schedule).is_valid());
    }
}
