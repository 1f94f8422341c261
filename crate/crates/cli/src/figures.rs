//! Preset parameter sets for figure data.

use std::f64::consts::FRAC_PI_2;

use clap::ValueEnum;
use qtomo_core::states::Parity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Single well, chi = 1.
    Fig1,
    /// Symmetric double well, chi = 1, a = 0.5, C = 1.
    Fig2a,
    /// Antisymmetric double well, chi = 1, a = 0.5, C = 1.
    Fig2b,
    /// Same state as fig2b.
    Fig3,
    /// Optical tomogram at theta = 0, chi = 5.
    Fig4a,
    /// Optical tomogram at theta = pi/2, chi = 5.
    Fig4b,
}

/// Which well a preset describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Well {
    Single { chi: f64 },
    Double { chi: f64, a: f64, parity: Parity },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    /// Wigner function on `[-half, half]^2`.
    Wigner { well: Well, half: f64 },
    /// Optical tomogram at fixed `theta` for `X` in `[-half, half]`.
    Tomogram { chi: f64, theta: f64, half: f64 },
}

pub const FULL_POINTS: usize = 121;

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2a => "fig2a",
            Figure::Fig2b => "fig2b",
            Figure::Fig3 => "fig3",
            Figure::Fig4a => "fig4a",
            Figure::Fig4b => "fig4b",
        }
    }

    pub fn preset(self) -> Preset {
        let double = |parity| Well::Double {
            chi: 1.0,
            a: 0.5,
            parity,
        };
        match self {
            Figure::Fig1 => Preset::Wigner {
                well: Well::Single { chi: 1.0 },
                half: 3.0,
            },
            Figure::Fig2a => Preset::Wigner {
                well: double(Parity::Symmetric),
                half: 3.0,
            },
            Figure::Fig2b | Figure::Fig3 => Preset::Wigner {
                well: double(Parity::Antisymmetric),
                half: 3.0,
            },
            Figure::Fig4a => Preset::Tomogram {
                chi: 5.0,
                theta: 0.0,
                half: 1.0,
            },
            Figure::Fig4b => Preset::Tomogram {
                chi: 5.0,
                theta: FRAC_PI_2,
                half: 15.0,
            },
        }
    }
}

/// Grid size after `--quick`: a quarter of the intervals, keeping the
/// centre point of odd grids.
pub fn quick_points(n: usize) -> usize {
    if n <= 2 {
        n
    } else {
        ((n - 1) / 4).max(1) + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_grids_keep_the_origin() {
        assert_eq!(quick_points(FULL_POINTS), 31);
        assert_eq!(quick_points(2), 2);
        assert_eq!(quick_points(9) % 2, 1);
    }
}
