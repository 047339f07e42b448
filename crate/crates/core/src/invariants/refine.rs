//! Breadth-first residue refinement of Z_p³ for the values of a local
//! invariant map.

use std::collections::BTreeSet;

use crate::arith::ipow;
use crate::localsolve::{class_status, ClassStatus};
use crate::surfaces::Surface;
use crate::symbols::InvariantValue;

use super::generator::LocalGen;

#[derive(Clone, Debug)]
pub(crate) struct Refinement {
    pub values: BTreeSet<InvariantValue>,
    /// Every class was resolved, so `values` is the exact image.
    pub complete: bool,
    pub nodes: usize,
}

/// Classifies residue classes level by level. A class contributes its
/// value once it is both Hensel-certified and determined by the generator;
/// undecided classes whose value is already known are dropped.
pub(crate) fn refine(s: &Surface, lg: &LocalGen, budget: usize, max_depth: u32) -> Refinement {
    let p = lg.p;
    let pi = p as i128;
    let fan = (pi * pi * pi) as usize;
    let mut values = BTreeSet::new();
    let mut nodes = 0usize;
    let mut level: Vec<([i128; 3], Option<InvariantValue>)> = vec![([0; 3], None)];
    let mut k = 0u32;
    while !level.is_empty() {
        if values.len() == 3 {
            return Refinement { values, complete: true, nodes };
        }
        if k >= max_depth || nodes + level.len() * fan > budget {
            return Refinement { values, complete: false, nodes };
        }
        let step = ipow(p, k);
        k += 1;
        let mut next = Vec::new();
        for (u, known) in level {
            for d in 0..pi * pi * pi {
                nodes += 1;
                let v = [u[0] + step * (d % pi), u[1] + step * (d / pi % pi), u[2] + step * (d / (pi * pi))];
                let status = class_status(s, &v, p, k);
                if status == ClassStatus::Empty {
                    continue;
                }
                let val = known.or_else(|| lg.eval_class(&v, k));
                match (status, val) {
                    (ClassStatus::Certified { .. }, Some(x)) => {
                        values.insert(x);
                    }
                    (ClassStatus::Undecided, Some(x)) if values.contains(&x) => {}
                    _ => next.push((v, val)),
                }
            }
        }
        level = next;
    }
    Refinement { values, complete: true, nodes }
}
