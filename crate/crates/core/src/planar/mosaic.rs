use rand::Rng;

use super::PlanarError;
use crate::symbolic::Pattern;
use crate::tower::WordTower;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MosaicShape {
    /// One random row of blocks, duplicated vertically.
    Columns,
    /// An independent duplicated block in every cell of an `l_k` by `l_k` grid.
    Blocks,
}

/// An `n x n` pattern tiled by words of `L_k` chosen uniformly and
/// independently, with the block grid offset by a uniform random phase.
pub fn sample_mosaic<R: Rng>(
    tower: &WordTower,
    k: u32,
    n: usize,
    shape: MosaicShape,
    rng: &mut R,
) -> Result<Pattern<u8>, PlanarError> {
    let level = tower.level(k)?;
    let lang = level.language();
    let len = level.len();
    let (px, py) = (rng.gen_range(0..len), rng.gen_range(0..len));
    let span = (n + len) / len + 1;
    let pick = |rng: &mut R| rng.gen_range(0..lang.len());
    let grid: Vec<Vec<usize>> = match shape {
        MosaicShape::Columns => {
            let row: Vec<usize> = (0..span).map(|_| pick(rng)).collect();
            vec![row; span]
        }
        MosaicShape::Blocks => (0..span)
            .map(|_| (0..span).map(|_| pick(rng)).collect())
            .collect(),
    };
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|y| {
            let by = (y + py) / len;
            (0..n)
                .map(|x| {
                    let gx = x + px;
                    lang[grid[by][gx / len]][gx % len]
                })
                .collect()
        })
        .collect();
    Ok(Pattern::grid(&rows).expect("square"))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::tower::{build_tower, BuildLimits, TowerParams};

    #[test]
    fn seeded_and_made_of_blocks() {
        let t = build_tower(
            &TowerParams::toy(vec![4], vec![4]).unwrap(),
            BuildLimits::default(),
        )
        .unwrap();
        let a = sample_mosaic(
            &t,
            1,
            20,
            MosaicShape::Blocks,
            &mut ChaCha8Rng::seed_from_u64(7),
        )
        .unwrap();
        let b = sample_mosaic(
            &t,
            1,
            20,
            MosaicShape::Blocks,
            &mut ChaCha8Rng::seed_from_u64(7),
        )
        .unwrap();
        assert_eq!(a, b);
        let c = sample_mosaic(
            &t,
            1,
            20,
            MosaicShape::Columns,
            &mut ChaCha8Rng::seed_from_u64(3),
        )
        .unwrap();
        let rows = c.rows().unwrap();
        assert!(rows.iter().all(|r| *r == rows[0]));
    }
}
