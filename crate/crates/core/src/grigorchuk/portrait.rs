//! Canonical portraits for the first Grigorchuk group.
//!
//! The group is contracting with nucleus {e, a, b, c, d}: every element
//! is a finite decorated tree whose leaves are nucleus elements and
//! whose internal nodes carry the activity bit. Canonicalization folds
//! any node whose children are leaves matching a nucleus decomposition
//! back into a leaf, which makes structural equality coincide with
//! equality of tree automorphisms.

use std::fmt;

/// Nucleus element label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Nucleus {
    E,
    A,
    B,
    C,
    D,
}

impl Nucleus {
    pub fn letter(self) -> char {
        match self {
            Nucleus::E => 'e',
            Nucleus::A => 'a',
            Nucleus::B => 'b',
            Nucleus::C => 'c',
            Nucleus::D => 'd',
        }
    }

    /// Defining one-level decomposition `(activity, section 0, section 1)`:
    /// a is the swap, b=(a,c), c=(a,d), d=(e,b).
    pub fn decompose(self) -> (bool, Nucleus, Nucleus) {
        match self {
            Nucleus::E => (false, Nucleus::E, Nucleus::E),
            Nucleus::A => (true, Nucleus::E, Nucleus::E),
            Nucleus::B => (false, Nucleus::A, Nucleus::C),
            Nucleus::C => (false, Nucleus::A, Nucleus::D),
            Nucleus::D => (false, Nucleus::E, Nucleus::B),
        }
    }
}

/// Contracted portrait: either a nucleus leaf or a node with one
/// activity bit and two child portraits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Portrait {
    Leaf(Nucleus),
    Node { active: bool, children: Box<(Portrait, Portrait)> },
}

use Portrait::{Leaf, Node};

fn make_node(active: bool, left: Portrait, right: Portrait) -> Portrait {
    if let (Leaf(l), Leaf(r)) = (&left, &right) {
        let folded = match (active, l, r) {
            (false, Nucleus::E, Nucleus::E) => Some(Nucleus::E),
            (true, Nucleus::E, Nucleus::E) => Some(Nucleus::A),
            (false, Nucleus::A, Nucleus::C) => Some(Nucleus::B),
            (false, Nucleus::A, Nucleus::D) => Some(Nucleus::C),
            (false, Nucleus::E, Nucleus::B) => Some(Nucleus::D),
            _ => None,
        };
        if let Some(n) = folded {
            return Leaf(n);
        }
    }
    Node { active, children: Box::new((left, right)) }
}

/// Products of nucleus pairs; the Klein relations close within the
/// nucleus, products with `a` expand one level.
fn leaf_mul(x: Nucleus, y: Nucleus) -> Portrait {
    use Nucleus::*;
    match (x, y) {
        (E, _) => Leaf(y),
        (_, E) => Leaf(x),
        (A, A) | (B, B) | (C, C) | (D, D) => Leaf(E),
        (B, C) | (C, B) => Leaf(D),
        (C, D) | (D, C) => Leaf(B),
        (B, D) | (D, B) => Leaf(C),
        (A, B) => make_node(true, Leaf(C), Leaf(A)),
        (B, A) => make_node(true, Leaf(A), Leaf(C)),
        (A, C) => make_node(true, Leaf(D), Leaf(A)),
        (C, A) => make_node(true, Leaf(A), Leaf(D)),
        (A, D) => make_node(true, Leaf(B), Leaf(E)),
        (D, A) => make_node(true, Leaf(E), Leaf(B)),
    }
}

impl Portrait {
    pub fn identity() -> Portrait {
        Leaf(Nucleus::E)
    }

    pub fn generator(n: Nucleus) -> Portrait {
        Leaf(n)
    }

    /// Canonical element with the given activity and sections.
    pub fn from_parts(active: bool, left: Portrait, right: Portrait) -> Portrait {
        make_node(active, left, right)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Leaf(Nucleus::E))
    }

    /// One-level wreath decomposition `(activity, g_0, g_1)`.
    pub fn sections(&self) -> (bool, Portrait, Portrait) {
        match self {
            Leaf(n) => {
                let (a, l, r) = n.decompose();
                (a, Leaf(l), Leaf(r))
            }
            Node { active, children } => (*active, children.0.clone(), children.1.clone()),
        }
    }

    pub fn activity(&self) -> bool {
        match self {
            Leaf(n) => n.decompose().0,
            Node { active, .. } => *active,
        }
    }

    /// `self` then `other` (right-action composition); contracts on the
    /// fly so canonical portraits stay small.
    pub fn multiply(&self, other: &Portrait) -> Portrait {
        if let (Leaf(p), Leaf(q)) = (self, other) {
            return leaf_mul(*p, *q);
        }
        let (ax, x0, x1) = self.sections();
        let (ay, y0, y1) = other.sections();
        let (h0, h1) = if ax {
            (x0.multiply(&y1), x1.multiply(&y0))
        } else {
            (x0.multiply(&y0), x1.multiply(&y1))
        };
        make_node(ax ^ ay, h0, h1)
    }

    pub fn inverse(&self) -> Portrait {
        match self {
            Leaf(_) => self.clone(), // all nucleus elements are involutions
            _ => {
                let (a, t0, t1) = self.sections();
                let (h0, h1) = if a {
                    (t1.inverse(), t0.inverse())
                } else {
                    (t0.inverse(), t1.inverse())
                };
                make_node(a, h0, h1)
            }
        }
    }

    pub fn square(&self) -> Portrait {
        self.multiply(self)
    }

    pub fn pow2(&self, squarings: u32) -> Portrait {
        let mut acc = self.clone();
        for _ in 0..squarings {
            acc = acc.square();
        }
        acc
    }

    /// Section at the end of a path of 0/1 steps; fails if any node on
    /// the path is active (element must stabilize the path's level).
    pub fn section_at(&self, path: &[bool]) -> Option<Portrait> {
        let mut cur = self.clone();
        for &step in path {
            let (active, s0, s1) = cur.sections();
            if active {
                return None;
            }
            cur = if step { s1 } else { s0 };
        }
        Some(cur)
    }

    /// Lies in the restricted stabilizer of the path: inactive along the
    /// path and trivial on every off-path subtree. Returns the section
    /// at the path end.
    pub fn restricted_to(&self, path: &[bool]) -> Option<Portrait> {
        let mut cur = self.clone();
        for &step in path {
            let (active, s0, s1) = cur.sections();
            if active {
                return None;
            }
            let (on, off) = if step { (s1, s0) } else { (s0, s1) };
            if !off.is_identity() {
                return None;
            }
            cur = on;
        }
        Some(cur)
    }

    /// Whether the element fixes levels `0..=n-1` pointwise.
    pub fn stabilizes_level(&self, n: usize) -> bool {
        if n == 0 {
            return true;
        }
        let (active, s0, s1) = self.sections();
        !active && s0.stabilizes_level(n - 1) && s1.stabilizes_level(n - 1)
    }

    pub fn depth(&self) -> usize {
        match self {
            Leaf(_) => 0,
            Node { children, .. } => 1 + children.0.depth().max(children.1.depth()),
        }
    }

    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.key_into(&mut out);
        out
    }

    fn key_into(&self, out: &mut Vec<u8>) {
        match self {
            Leaf(n) => out.push(*n as u8),
            Node { active, children } => {
                out.push(5 + *active as u8);
                children.0.key_into(out);
                children.1.key_into(out);
            }
        }
    }
}

impl fmt::Debug for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf(n) => write!(f, "{}", n.letter()),
            Node { active, children } => {
                write!(f, "({:?},{:?})", children.0, children.1)?;
                if *active {
                    write!(f, "s")?;
                }
                Ok(())
            }
        }
    }
}

/// Nested JSON rendering: leaves as letters, nodes with activity bit.
pub fn portrait_json(p: &Portrait) -> serde_json::Value {
    match p {
        Leaf(n) => serde_json::Value::String(n.letter().to_string()),
        Node { active, children } => serde_json::json!({
            "active": *active,
            "0": portrait_json(&children.0),
            "1": portrait_json(&children.1),
        }),
    }
}
