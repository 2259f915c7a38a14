//! 8-fold coordinate symmetry augmentation: the dihedral images of the unit
//! square. All are isometries, so objectives are unchanged.

use vrp_core::Instance;

/// The 8 symmetry images of an instance. The first image is the original.
pub fn augment8(instance: &Instance) -> [Instance; 8] {
    let transforms: [fn(f64, f64) -> (f64, f64); 8] = [
        |x, y| (x, y),
        |x, y| (y, x),
        |x, y| (1.0 - x, y),
        |x, y| (y, 1.0 - x),
        |x, y| (x, 1.0 - y),
        |x, y| (1.0 - y, x),
        |x, y| (1.0 - x, 1.0 - y),
        |x, y| (1.0 - y, 1.0 - x),
    ];
    transforms.map(|t| {
        let mut img = instance.clone();
        for c in &mut img.coords {
            *c = t(c.0, c.1);
        }
        img
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use vrp_core::{build_instance, construct, evaluate, DecodeMode, UniformPolicy, VariantSpec};

    #[test]
    fn first_image_is_identity() {
        let inst = crate::gen::generate_instance(VariantSpec::CVRP, 10, 3).unwrap();
        let images = augment8(&inst);
        assert_eq!(images[0], inst);
    }

    #[test]
    fn dihedral_images_of_a_point() {
        let inst = build_instance(
            VariantSpec::CVRP,
            vec![(0.5, 0.5), (0.2, 0.7)],
            vec![0, 1],
        );
        let images = augment8(&inst);
        let points: Vec<(f64, f64)> = images.iter().map(|i| i.coords[1]).collect();
        assert!(points.contains(&(0.7, 0.2)));
        assert!(points.contains(&(0.8, 0.7)));
        assert_eq!(points.len(), 8);
    }

    #[test]
    fn objectives_agree_across_images() {
        use rand::SeedableRng;
        let inst = crate::gen::generate_instance(VariantSpec::OVRPTW, 15, 8).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let (sol, _) = construct(&inst, &UniformPolicy, DecodeMode::Sample, &mut rng).unwrap();
        let base = evaluate(&inst, &sol).unwrap();
        for img in augment8(&inst) {
            assert!((evaluate(&img, &sol).unwrap() - base).abs() < 1e-9);
        }
    }
}
