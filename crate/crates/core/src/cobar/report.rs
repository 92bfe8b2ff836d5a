use std::fmt::Write as _;

use super::complex::CobarData;
use crate::dioperad::{quadratic_dual, quotient_slot, Presentation};
use crate::error::Result;

/// Cohomology of one cobar slot and its comparison with the quadratic dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotReport {
    pub m: usize,
    pub n: usize,
    /// Chain dimensions indexed by tree degree `-(m+n-3)..=0`.
    pub chain_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    /// Cohomology dimensions indexed like `chain_dims`.
    pub cohomology: Vec<usize>,
    pub dual_dim: usize,
    pub d_squared_zero: bool,
}

impl SlotReport {
    pub fn negative_vanishes(&self) -> bool {
        self.cohomology[..self.cohomology.len() - 1].iter().all(|&h| h == 0)
    }

    pub fn h0(&self) -> usize {
        *self.cohomology.last().expect("nonempty complex")
    }

    pub fn koszul(&self) -> bool {
        self.d_squared_zero && self.negative_vanishes() && self.h0() == self.dual_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub presentation: String,
    pub window: usize,
    pub slots: Vec<SlotReport>,
}

impl KoszulReport {
    pub fn koszul_in_window(&self) -> bool {
        self.slots.iter().all(|s| s.koszul())
    }

    pub fn verdict(&self) -> &'static str {
        if self.koszul_in_window() {
            "koszul-in-window"
        } else {
            "not-koszul-in-window"
        }
    }

    /// Line-oriented `key=value` rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "presentation={}", self.presentation);
        let _ = writeln!(s, "window={}", self.window);
        for r in &self.slots {
            let p = format!("slot.{}.{}", r.m, r.n);
            let _ = writeln!(s, "{p}.chain_dims={}", join(&r.chain_dims));
            let _ = writeln!(s, "{p}.ranks={}", join(&r.ranks));
            let _ = writeln!(s, "{p}.cohomology={}", join(&r.cohomology));
            let _ = writeln!(s, "{p}.dual_dim={}", r.dual_dim);
            let _ = writeln!(s, "{p}.d_squared_zero={}", r.d_squared_zero);
            let _ = writeln!(s, "{p}.koszul={}", r.koszul());
        }
        let _ = writeln!(s, "verdict={}", self.verdict());
        s
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Builds the cobar complex of `p` in every slot with `3 <= m+n <= window` and compares its
/// cohomology with the quadratic dual of `p`.
pub fn koszulness_report(p: &Presentation, window: usize) -> Result<KoszulReport> {
    let data = CobarData::new(p, window)?;
    let dual = quadratic_dual(p)?;
    let mut slots = Vec::new();
    for s in 3..=window {
        for m in 1..s {
            let n = s - m;
            let cx = data.complex(m, n)?;
            let dual_dim = quotient_slot(&dual, m, n, s - 2)?.dim();
            slots.push(SlotReport {
                m,
                n,
                chain_dims: (0..cx.bases.len()).map(|e| cx.dim(e)).collect(),
                ranks: cx.ranks(),
                cohomology: cx.cohomology(),
                dual_dim,
                d_squared_zero: cx.d_squared_nnz()? == 0,
            });
        }
    }
    Ok(KoszulReport { presentation: p.name.clone(), window, slots })
}
