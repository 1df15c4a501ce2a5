//! Property tests for the invariants of bodies, complements, witnesses and
//! simplices.

use metric_complements::bodies::{Ball, BallCertificate, ConvexBody, HPolytope, Status};
use metric_complements::complements::{double_complement_membership, in_metric_complement};
use metric_complements::lab::{random_body, BodyKind};
use metric_complements::linalg::{barycentric, Vector};
use metric_complements::simplex::{facet_hyperplanes, inradius_at, scaled_simplex, Simplex};
use metric_complements::witnesses::{ball_transport, density_witness, segment_interior, segment_interior_ball};
use proptest::prelude::*;

fn vector(dim: usize, span: f64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-span..span, dim).prop_map(|c| Vector::new(c).unwrap())
}

fn kind() -> impl Strategy<Value = BodyKind> {
    prop::sample::select(BodyKind::ALL.to_vec())
}

/// A random body in R² or R³ with a point near it.
fn body_and_point() -> impl Strategy<Value = (ConvexBody, Vector)> {
    (kind(), 2usize..=3, 0usize..8, any::<u64>()).prop_flat_map(|(k, dim, c, seed)| {
        let body = random_body(k, dim, c, seed).unwrap();
        (Just(body), vector(dim, 2.0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn projection_is_idempotent_and_nonexpansive(
        (k, x) in body_and_point(),
        shift in vector(3, 1.0),
    ) {
        let tol = 1e-9;
        let p = k.project(&x, tol).unwrap();
        let pp = k.project(&p, tol).unwrap();
        prop_assert!(p.dist(&pp) <= 1e-6);
        let y = Vector::new(x.coords().iter().zip(shift.coords()).map(|(a, b)| a + b).collect()).unwrap();
        let q = k.project(&y, tol).unwrap();
        prop_assert!(p.dist(&q) <= x.dist(&y) + 1e-6);
        prop_assert!(k.distance_lower_bound(&x) <= k.distance(&x, tol).unwrap() + 1e-6);
    }

    #[test]
    fn translation_moves_distances_along((k, x) in body_and_point(), a in vector(3, 1.0)) {
        let a = Vector::new(a.coords()[..k.dim()].to_vec()).unwrap();
        let moved = k.translate(&a);
        let d0 = k.distance(&x, 1e-9).unwrap();
        let d1 = moved.distance(&(&x - &a), 1e-9).unwrap();
        prop_assert!((d0 - d1).abs() <= 1e-6, "{} vs {}", d0, d1);
    }

    #[test]
    fn shape_json_round_trips((k, _x) in body_and_point()) {
        let back = ConvexBody::from_json(&k.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), k.to_json());
    }

    #[test]
    fn metric_complement_is_open((k, x) in body_and_point(), r in 0.01f64..1.0, u in vector(3, 1.0)) {
        prop_assume!(in_metric_complement(&k, &x, r).unwrap());
        let dir = Vector::new(u.coords()[..k.dim()].to_vec()).unwrap();
        prop_assume!(dir.norm() > 1e-6);
        let y = &x + &dir.normalized().unwrap().scale(r / 4.0);
        prop_assert!(in_metric_complement(&k, &y, r / 2.0).unwrap());
    }

    #[test]
    fn metric_complement_is_antitone(
        c in vector(2, 1.0),
        r in 0.1f64..1.0,
        grow in 0.0f64..1.0,
        x in vector(2, 3.0),
        scale in 0.01f64..1.0,
    ) {
        let small: ConvexBody = Ball::closed(c.clone(), r).unwrap().into();
        let big: ConvexBody = Ball::closed(c, r + grow).unwrap().into();
        if in_metric_complement(&big, &x, scale).unwrap() {
            prop_assert!(in_metric_complement(&small, &x, scale).unwrap());
        }
    }

    #[test]
    fn interior_is_in_double_complement((k, _x) in body_and_point(), u in vector(3, 1.0)) {
        let cheb = k.chebyshev_ball().unwrap();
        let dir = Vector::new(u.coords()[..k.dim()].to_vec()).unwrap();
        let x = cheb.center() + &dir.scale(0.5 * cheb.radius() / (1.0 + dir.norm()));
        let v = double_complement_membership(&k, &x, 1e-9).unwrap();
        prop_assert_eq!(v.status, Status::Inside);
        prop_assert!(v.margin >= 0.5 * cheb.radius() - 1e-9);
    }

    #[test]
    fn transport_splits_the_point(
        x in vector(3, 2.0),
        y in vector(3, 2.0),
        lambda in 0.0f64..=1.0,
        r in 0.1f64..2.0,
        u in vector(3, 1.0),
    ) {
        let z = x.lerp(&y, lambda);
        let zeta = &z + &u.scale(0.99 * r / (1.0 + u.norm()));
        let (xi, eta) = ball_transport(&x, &y, lambda, r, &zeta).unwrap();
        prop_assert!(xi.dist(&x) < r && eta.dist(&y) < r);
        prop_assert!(xi.lerp(&eta, lambda).dist(&zeta) <= 1e-12);
    }

    #[test]
    fn segment_ball_law_on_boxes(
        lambda in 0.01f64..0.99,
        t in 0.0f64..1.0,
        side in 0.0f64..1.0,
    ) {
        let k: ConvexBody = HPolytope::unit_cube(2).into();
        let x = Vector::new(vec![0.5, 0.5]).unwrap();
        let r = 0.5;
        let reach = (1.0 - lambda) * r * (1.0 - 1e-9) * t;
        let y = Vector::new(vec![1.0 + reach, side]).unwrap();
        let w = segment_interior_ball(&k, &x, r, &y, lambda).unwrap();
        prop_assert!((w.certificate.radius() - (1.0 - lambda).powi(2) * r).abs() <= 1e-15);
        prop_assert!(k.interior_margin(&w.z).unwrap() >= w.certificate.radius() - 1e-9);
    }

    #[test]
    fn density_and_segment_witnesses_certify((k, _x) in body_and_point(), lambda in 0.0f64..0.999, f in 0.01f64..1.99, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cheb = k.chebyshev_ball().unwrap();
        let r = 0.9 * cheb.radius();
        let y = k.sample(1, &mut rng).unwrap().remove(0);
        let d = cheb.center().dist(&y);
        let w = density_witness(&k, cheb.center(), r, &y, f * d.max(1e-3)).unwrap();
        if w.lambda < 1.0 {
            prop_assert!((w.z.dist(&y) - f * d.max(1e-3) / 2.0).abs() <= 1e-12);
        }
        prop_assert!(k.interior_margin(&w.z).unwrap() >= w.certificate.radius() - 1e-9);
        let s = segment_interior(&k, cheb.center(), r, &y, lambda).unwrap();
        prop_assert!(k.interior_margin(&s.z).unwrap() >= s.certificate.radius() - 1e-9);
        prop_assert!(s.certificate.radius() > 0.0);
    }

    #[test]
    fn facet_and_barycentric_signs_agree(
        n in 1usize..=6,
        a in vector(6, 1.0),
        r in 0.1f64..2.0,
        jitter in prop::collection::vec(-0.3f64..0.3, 49),
        p in vector(6, 3.0),
    ) {
        let a = Vector::new(a.coords()[..n].to_vec()).unwrap();
        let base = scaled_simplex(&a, r, n).unwrap();
        let verts: Vec<Vector> = base
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                Vector::new((0..n).map(|j| v[j] + r * jitter[i * 7 + j]).collect()).unwrap()
            })
            .collect();
        let Ok(s) = Simplex::new(verts) else { return Ok(()) };
        let p = Vector::new(p.coords()[..n].to_vec()).unwrap();
        let w = barycentric(s.vertices(), &p).unwrap();
        let m = inradius_at(&s, &p).unwrap();
        prop_assume!(m.abs() > 1e-9);
        prop_assert_eq!(w.min_weight() > 0.0, m > 0.0);
        prop_assert!((w.sum() - 1.0).abs() <= 1e-9);
        prop_assert!(inradius_at(&s, &s.barycentre()).unwrap() > 0.0);
        prop_assert_eq!(facet_hyperplanes(&s).unwrap().len(), n + 1);
    }

    #[test]
    fn sampled_certificates_agree_with_margins((k, _x) in body_and_point(), shrink in 0.1f64..0.99, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cheb = k.chebyshev_ball().unwrap();
        let cert = BallCertificate::new(cheb.center().clone(), cheb.radius() * shrink);
        prop_assert!(cert.verify_margin(&k).unwrap().passed);
        prop_assert!(cert.verify_sampling(&k, 200, &mut rng).unwrap().passed);
    }
}
