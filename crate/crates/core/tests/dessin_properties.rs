use dessin_core::dessin::Perm;
use dessin_core::verify::brute_force_automorphisms;
use dessin_core::{Dessin, DessinError};
use proptest::prelude::*;

/// Two random permutations of the same size, as image vectors.
fn perm_pair(max: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1..=max).prop_flat_map(|n| {
        let p = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        (p.clone(), p)
    })
}

fn dessin(w: Vec<usize>, b: Vec<usize>) -> Result<Dessin, DessinError> {
    Dessin::new(Perm::from_images(w).unwrap(), Perm::from_images(b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_and_riemann_hurwitz((w, b) in perm_pair(10)) {
        let Ok(d) = dessin(w, b) else { return Ok(()) };
        let p = d.passport();
        let v = (p.white_degrees.len() + p.black_degrees.len()) as i64;
        let f = p.face_half_degrees.len() as i64;
        let e = d.dart_count() as i64;
        prop_assert_eq!(2 - 2 * d.genus() as i64, v + f - e);
        let ram: usize = p.white_degrees.iter()
            .chain(&p.black_degrees)
            .chain(&p.face_half_degrees)
            .map(|e| e - 1)
            .sum();
        prop_assert_eq!(2 - 2 * d.genus() as i64, 2 * p.degree as i64 - ram as i64);
        for degs in [&p.white_degrees, &p.black_degrees, &p.face_half_degrees] {
            prop_assert_eq!(degs.iter().sum::<usize>(), p.degree);
        }
    }

    #[test]
    fn triangulation_counts((w, b) in perm_pair(10)) {
        let Ok(d) = dessin(w, b) else { return Ok(()) };
        let t = d.triangulate();
        prop_assert_eq!(t.triangle_count(), 2 * d.dart_count());
        prop_assert_eq!(t.butterfly_count(), d.dart_count());
        let mut used = vec![false; t.triangle_count()];
        for &(plus, minus) in &t.butterfly_pairs {
            prop_assert!(!used[plus] && !used[minus]);
            used[plus] = true;
            used[minus] = true;
        }
        prop_assert!(used.iter().all(|&u| u));
    }

    #[test]
    fn automorphisms_match_brute_force((w, b) in perm_pair(7)) {
        let Ok(d) = dessin(w, b) else { return Ok(()) };
        let mut fast: Vec<_> = d.automorphisms().elements().to_vec();
        let mut slow = brute_force_automorphisms(&d);
        fast.sort();
        slow.sort();
        prop_assert_eq!(d.dart_count() % fast.len(), 0);
        prop_assert_eq!(fast, slow);
    }
}

#[test]
fn star_dessins_have_cyclic_automorphisms() {
    for n in 1..=6 {
        let d = Dessin::from_cycles(n, &[(1..=n).collect()], &[]).unwrap();
        let aut = d.automorphisms();
        assert_eq!(aut.order(), n);
        assert_eq!(brute_force_automorphisms(&d).len(), n);
        assert_eq!(
            dessin_core::dessin::classify_perm_group(&aut).to_string(),
            format!("C{n}")
        );
    }
}

#[test]
fn disconnected_pair_is_rejected() {
    let err = Dessin::from_cycles(4, &[vec![1, 2]], &[vec![1, 2], vec![3, 4]]).unwrap_err();
    assert_eq!(err, DessinError::Disconnected);
}
