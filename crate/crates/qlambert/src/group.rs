//! The symbolic group generated by
//! S(x,y,z,w) = (z/w, w, xy, y) and T(x,y,z,w) = (y, x, w, z),
//! acting on quadruples of Laurent monomials in (x, y, z, w).
//!
//! Both generators act multiplicatively, so an element is a 4×4 integer
//! exponent matrix and composition is matrix multiplication over ℤ. That
//! makes closure detection an exact set-membership test.

use std::collections::HashSet;
use std::fmt;

/// One transformation: row i holds the exponents of (x, y, z, w) in the
/// i-th output component. The identity transformation is the identity matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial4 {
    rows: [[i64; 4]; 4],
}

/// The two generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    S,
    T,
}

impl Monomial4 {
    pub fn identity() -> Self {
        let mut rows = [[0i64; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        Monomial4 { rows }
    }

    /// S: (x,y,z,w) ↦ (z/w, w, xy, y)
    pub fn s() -> Self {
        Monomial4 {
            rows: [[0, 0, 1, -1], [0, 0, 0, 1], [1, 1, 0, 0], [0, 1, 0, 0]],
        }
    }

    /// T: (x,y,z,w) ↦ (y, x, w, z)
    pub fn t() -> Self {
        Monomial4 {
            rows: [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        }
    }

    pub fn generator(g: Generator) -> Self {
        match g {
            Generator::S => Self::s(),
            Generator::T => Self::t(),
        }
    }

    /// Function composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Monomial4) -> Monomial4 {
        let mut rows = [[0i64; 4]; 4];
        for (row, self_row) in rows.iter_mut().zip(self.rows.iter()) {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = 0;
                for (k, other_row) in other.rows.iter().enumerate() {
                    acc += self_row[k] * other_row[j];
                }
                *cell = acc;
            }
        }
        Monomial4 { rows }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn row(&self, i: usize) -> [i64; 4] {
        self.rows[i]
    }

    /// Integer determinant by cofactor expansion.
    pub fn determinant(&self) -> i64 {
        fn det3(m: [[i64; 3]; 3]) -> i64 {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        let mut acc = 0;
        for j in 0..4 {
            let mut minor = [[0i64; 3]; 3];
            for i in 1..4 {
                let mut c = 0;
                for k in 0..4 {
                    if k == j {
                        continue;
                    }
                    minor[i - 1][c] = self.rows[i][k];
                    c += 1;
                }
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += sign * self.rows[0][j] * det3(minor);
        }
        acc
    }

    /// Smallest k ≥ 1 with self^k = I, up to `max`.
    pub fn order(&self, max: u32) -> Option<u32> {
        let mut acc = *self;
        for k in 1..=max {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self);
        }
        None
    }
}

/// Apply a generator to an element: `generator ∘ element`.
pub fn apply(g: Generator, m: &Monomial4) -> Monomial4 {
    Monomial4::generator(g).compose(m)
}

/// One group element together with a shortest word in the generators.
/// The word reads in composition order: "ST" is S∘T (T applied first).
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub element: Monomial4,
    pub word: String,
}

/// Breadth-first closure of {S, T} under composition. Elements appear in
/// shortlex order of their words (S before T), so the listing and the
/// word choice are deterministic.
pub fn closure() -> Vec<GroupElement> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let id = Monomial4::identity();
    seen.insert(id);
    queue.push_back(GroupElement {
        element: id,
        word: String::new(),
    });
    while let Some(cur) = queue.pop_front() {
        out.push(cur.clone());
        for (g, letter) in [(Generator::S, 'S'), (Generator::T, 'T')] {
            let next = cur.element.compose(&Monomial4::generator(g));
            if seen.insert(next) {
                let mut word = cur.word.clone();
                word.push(letter);
                queue.push_back(GroupElement {
                    element: next,
                    word,
                });
            }
        }
    }
    out
}

/// Render one output component, e.g. `z/w`, `x*y`, `1`, `x^2/w`.
fn component_string(row: [i64; 4]) -> String {
    const VARS: [char; 4] = ['x', 'y', 'z', 'w'];
    let mut num = String::new();
    let mut den = String::new();
    for (v, &e) in VARS.iter().zip(row.iter()) {
        let (target, mag) = if e > 0 {
            (&mut num, e)
        } else if e < 0 {
            (&mut den, -e)
        } else {
            continue;
        };
        if !target.is_empty() {
            target.push('*');
        }
        target.push(*v);
        if mag != 1 {
            target.push_str(&format!("^{mag}"));
        }
    }
    match (num.is_empty(), den.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => num,
        (true, false) => format!("1/{den}"),
        (false, false) => {
            if den.contains('*') {
                format!("{num}/({den})")
            } else {
                format!("{num}/{den}")
            }
        }
    }
}

impl fmt::Display for Monomial4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            component_string(self.rows[0]),
            component_string(self.rows[1]),
            component_string(self.rows[2]),
            component_string(self.rows[3]),
        )
    }
}
