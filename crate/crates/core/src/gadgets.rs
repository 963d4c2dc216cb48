//! Small ZX diagrams used as building blocks: scalars, copy/parity maps,
//! controlled gates and the triangle-based W node.

use crate::angle::Angle;
use crate::diagram::{Builder, Calculus, Diagram, NodeKind, Pin};

const ZX: Calculus = Calculus::Zx;

fn build(b: &Builder) -> Diagram {
    b.build().expect("gadget is well formed")
}

/// `Z(0)^{(0,1)}` feeding `X(0)^{(1,0)}`: the scalar `√2`.
pub fn sqrt2() -> Diagram {
    Diagram::x(Angle::zero(), 1, 0).compose(&Diagram::z(Angle::zero(), 0, 1)).unwrap()
}

/// A green and a red spider joined by three wires: the scalar `1/√2`.
pub fn inv_sqrt2() -> Diagram {
    let mut b = Builder::new(ZX);
    let z = b.z(Angle::zero(), 0);
    let x = b.x(Angle::zero(), 0);
    for _ in 0..3 {
        b.link(z, x);
    }
    build(&b)
}

/// `Z(α)^{(0,1)}` feeding `X(π)^{(1,0)}`: the scalar `√2·e^{iα}`.
pub fn sqrt2_phase(angle: Angle) -> Diagram {
    Diagram::x(Angle::pi(), 1, 0).compose(&Diagram::z(angle, 0, 1)).unwrap()
}

/// The scalar `e^{iα}`.
pub fn phase(angle: Angle) -> Diagram {
    sqrt2_phase(angle).tensor(&inv_sqrt2()).unwrap()
}

/// `Z(π)^{(0,0)}`: the scalar 0.
pub fn zero() -> Diagram {
    Diagram::z(Angle::pi(), 0, 0)
}

/// `Z(0)^{(0,0)}`: the scalar 2.
pub fn two() -> Diagram {
    Diagram::z(Angle::zero(), 0, 0)
}

/// `n` copies of a scalar side by side.
pub fn scalar_power(s: &Diagram, n: usize) -> Diagram {
    let mut d = Diagram::empty(s.calculus);
    for _ in 0..n {
        d = d.tensor(s).unwrap();
    }
    d
}

pub fn not() -> Diagram {
    Diagram::x(Angle::pi(), 1, 1)
}

pub fn copy() -> Diagram {
    Diagram::z(Angle::zero(), 1, 2)
}

pub fn wire() -> Diagram {
    Diagram::identity(ZX, 1)
}

/// The transposed triangle `[[1,0],[1,1]]`: input on the apex.
pub fn triangle_t() -> Diagram {
    Diagram::triangle().transpose()
}

/// `H ∘ Δ ∘ H`.
pub fn green_triangle() -> Diagram {
    Diagram::sequence(&[Diagram::hadamard(), Diagram::triangle(), Diagram::hadamard()]).unwrap()
}

/// `|0⟩` as `X(0)^{(0,1)}` with its `√2` compensated.
pub fn ket0() -> Diagram {
    Diagram::x(Angle::zero(), 0, 1).tensor(&inv_sqrt2()).unwrap()
}

/// `|1⟩` as `X(π)^{(0,1)}` with its `√2` compensated.
pub fn ket1() -> Diagram {
    Diagram::x(Angle::pi(), 0, 1).tensor(&inv_sqrt2()).unwrap()
}

/// CNOT with control on the first wire.
pub fn cnot() -> Diagram {
    let mut b = Builder::new(ZX);
    let c = b.z(Angle::zero(), 0);
    let t = b.x(Angle::zero(), 0);
    b.link(Pin::In(0), c).link(c, Pin::Out(0)).link(c, t);
    b.link(Pin::In(1), t).link(t, Pin::Out(1));
    build(&b).tensor(&sqrt2()).unwrap()
}

/// Controlled-Z.
pub fn cz() -> Diagram {
    let mut b = Builder::new(ZX);
    let p = b.z(Angle::zero(), 0);
    let q = b.z(Angle::zero(), 0);
    let h = b.h();
    b.link(Pin::In(0), p).link(p, Pin::Out(0)).link(p, (h, 0));
    b.link(Pin::In(1), q).link(q, Pin::Out(1)).link((h, 1), q);
    build(&b).tensor(&sqrt2()).unwrap()
}

/// The W node `|0⟩ ↦ |01⟩+|10⟩, |1⟩ ↦ |00⟩` built from a triangle: a red
/// π parity check on `(a, b, c)` with the triangle forbidding `b = c = 1`.
pub fn w() -> Diagram {
    let mut b = Builder::new(ZX);
    let par = b.x(Angle::pi(), 0);
    let zb = b.z(Angle::zero(), 0);
    let zc = b.z(Angle::zero(), 0);
    let neg = b.node(NodeKind::x(Angle::pi(), 1, 1));
    let t = b.triangle();
    b.link(Pin::In(0), par).link(par, zb).link(par, zc);
    b.link(zb, Pin::Out(0)).link(zc, Pin::Out(1));
    b.link(zc, (neg, 0)).link((neg, 1), (t, 0)).link((t, 1), zb);
    build(&b).tensor(&sqrt2()).unwrap()
}

/// `|x, y⟩ ↦ |x ∧ y⟩`: triangles force `o ≤ x` and `x ≤ o ⊕ x ⊕ y`, a
/// parity check ties the three together.
pub fn and_gate() -> Diagram {
    let mut b = Builder::new(ZX);
    let zx = b.z(Angle::zero(), 0);
    let zo = b.z(Angle::zero(), 0);
    let check = b.x(Angle::zero(), 0);
    let (lower, upper) = (b.triangle(), b.triangle());
    b.link(Pin::In(0), zx).link(zo, Pin::Out(0));
    b.link(zx, (lower, 0)).link((lower, 1), zo);
    b.link(check, (upper, 0)).link((upper, 1), zx);
    b.link(zx, check).link(Pin::In(1), check).link(zo, check);
    build(&b).tensor(&two()).unwrap()
}

/// `diag(1, 1, 1, e^{iα})` with the control computed by [`and_gate`].
pub fn controlled_phase(angle: Angle) -> Diagram {
    let mut b = Builder::new(ZX);
    let za = b.z(Angle::zero(), 0);
    let zb = b.z(Angle::zero(), 0);
    b.link(Pin::In(0), za).link(za, Pin::Out(0)).link(za, Pin::Out(2));
    b.link(Pin::In(1), zb).link(zb, Pin::Out(1)).link(zb, Pin::Out(3));
    let fan = build(&b);
    let and = Diagram::identity(ZX, 2).tensor(&and_gate()).unwrap();
    let effect = Diagram::identity(ZX, 2).tensor(&Diagram::z(angle, 1, 0)).unwrap();
    Diagram::sequence(&[fan, and, effect]).unwrap()
}

/// The W node read as a 2→1 map.
pub fn w21() -> Diagram {
    w().transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CycloScalar;
    use crate::semantics::{interpret, Matrix, Mode};

    fn m(d: &Diagram) -> Matrix {
        interpret(d, Mode::Exact).unwrap()
    }

    #[test]
    fn scalars() {
        assert_eq!(m(&sqrt2()), Matrix::Exact(crate::semantics::Dense::new(1, 1, vec![CycloScalar::sqrt2()])));
        assert_eq!(m(&inv_sqrt2()), Matrix::from_ints(1, 1, &[1], 1));
        assert_eq!(m(&zero()), Matrix::from_ints(1, 1, &[0], 0));
        assert_eq!(m(&two()), Matrix::from_ints(1, 1, &[2], 0));
        for q in 0..8 {
            let e = m(&phase(Angle::quarter(q)));
            assert_eq!(e.get(0, 0), crate::semantics::Entry::Exact(CycloScalar::omega_pow(q)));
        }
    }

    #[test]
    fn gates() {
        assert_eq!(m(&not()), Matrix::from_ints(2, 2, &[0, 1, 1, 0], 0));
        assert_eq!(
            m(&cnot()),
            Matrix::from_ints(4, 4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0], 0)
        );
        assert_eq!(
            m(&cz()),
            Matrix::from_ints(4, 4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1], 0)
        );
        assert_eq!(m(&triangle_t()), Matrix::from_ints(2, 2, &[1, 0, 1, 1], 0));
        assert_eq!(m(&ket0()), Matrix::from_ints(2, 1, &[1, 0], 0));
        assert_eq!(m(&ket1()), Matrix::from_ints(2, 1, &[0, 1], 0));
    }

    #[test]
    fn w_node() {
        assert_eq!(m(&w()), Matrix::from_ints(4, 2, &[0, 1, 1, 0, 1, 0, 0, 0], 0));
        assert_eq!(m(&w21()), Matrix::from_ints(2, 4, &[0, 1, 1, 0, 1, 0, 0, 0], 0));
    }

    #[test]
    fn and_and_controlled_phase() {
        assert_eq!(m(&and_gate()), Matrix::from_ints(2, 4, &[1, 1, 1, 0, 0, 0, 0, 1], 0));
        let cp = m(&controlled_phase(Angle::quarter(2)));
        let Matrix::Exact(d) = cp else { unreachable!() };
        for r in 0..4 {
            for c in 0..4 {
                let want = match (r, c) {
                    (3, 3) => CycloScalar::omega_pow(2),
                    (r, c) if r == c => CycloScalar::one(),
                    _ => CycloScalar::zero(),
                };
                assert_eq!(d.get(r, c), &want);
            }
        }
    }

    #[test]
    fn green_triangle_matrix() {
        // H Δ H = (1/2)[[3,-1],[1,1]]
        assert_eq!(m(&green_triangle()), Matrix::from_ints(2, 2, &[3, -1, 1, 1], 2));
    }
}
