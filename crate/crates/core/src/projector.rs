//! The projectors `P_r` onto `span{(1, e^{iα})^{⊗r}}`.
//!
//! `P_1` is a wire and `P_2` is the box `M_2` with
//! `⟦M_2⟧ = (1000; 0010; 0010; 0001)`. For larger `r`, `P_r` chains `M_2`
//! boxes along a bubble-sort comparator network: the transposed box sorts two
//! bits in descending order, so the reversed product of the transposed boxes
//! is the transpose of a sorting network.

use crate::angle::Angle;
use crate::diagram::{Builder, Calculus, Diagram, Pin};
use crate::error::{Error, Result};
use crate::gadgets;

/// Largest supported `r`.
pub const MAX_R: usize = 5;

/// The 2→2 box `M_2`: copies of the four wires, a parity check over all of
/// them and three triangles enforcing `i₂ ≤ o₁`, `i₂ ≤ o₂` and `o₁ ≤ i₁`.
pub fn m2() -> Diagram {
    let mut b = Builder::new(Calculus::Zx);
    let z = Angle::zero();
    let ci1 = b.z(z.clone(), 0);
    let ci2 = b.z(z.clone(), 0);
    let co1 = b.z(z.clone(), 0);
    let co2 = b.z(z.clone(), 0);
    let par = b.x(z, 0);
    let (t1, t2, t3) = (b.triangle(), b.triangle(), b.triangle());
    b.link(Pin::In(0), ci1).link(Pin::In(1), ci2).link(co1, Pin::Out(0)).link(co2, Pin::Out(1));
    for c in [co1, co2, ci1, ci2] {
        b.link(c, par);
    }
    // a triangle's apex may not exceed its base
    b.link(co1, (t1, 0)).link((t1, 1), ci2);
    b.link(co2, (t2, 0)).link((t2, 1), ci2);
    b.link(ci1, (t3, 0)).link((t3, 1), co1);
    b.build().unwrap().tensor(&gadgets::two()).unwrap()
}

/// `M_2` acting on wires `i, i+1` of `r`.
fn m2_at(r: usize, i: usize) -> Diagram {
    let left = Diagram::identity(Calculus::Zx, i);
    let right = Diagram::identity(Calculus::Zx, r - i - 2);
    left.tensor(&m2()).unwrap().tensor(&right).unwrap()
}

pub fn build_pr(r: usize) -> Result<Diagram> {
    if r == 0 || r > MAX_R {
        return Err(Error::OutOfRange(format!("P_r needs 1 ≤ r ≤ {MAX_R}, got {r}")));
    }
    if r == 1 {
        return Ok(Diagram::identity(Calculus::Zx, 1));
    }
    // bubble sort network, comparators in application order
    let mut comparators = Vec::new();
    for pass in 0..r - 1 {
        for i in 0..r - 1 - pass {
            comparators.push(i);
        }
    }
    // ⟦M_2⟧ is a transposed comparator; applying the boxes in reverse order
    // gives the transpose of the sorting network
    let boxes: Vec<Diagram> = comparators.iter().rev().map(|&i| m2_at(r, i)).collect();
    Diagram::sequence(&boxes)
}
