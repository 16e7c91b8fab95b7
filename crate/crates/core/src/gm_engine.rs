//! The Garsia–Milne involution principle as a reusable transport.
//!
//! Given signed sets `S` and `S'` with sign-reversing involutions `I`, `I'`
//! whose fixed points are positive, and a sign-preserving bijection
//! `f: S -> S'`, a fixed point `t` of `I` is sent to `f(t)` and then pushed
//! through `f . I . f^-1 . I'` until it lands on a fixed point of `I'`.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Result, RookError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A finite signed set with a sign-reversing involution.
pub trait SignedSet {
    type Element: Clone + Eq + Hash + Debug;

    fn sign(&self, e: &Self::Element) -> Sign;
    fn involution(&self, e: &Self::Element) -> Self::Element;

    fn is_fixed(&self, e: &Self::Element) -> bool {
        &self.involution(e) == e
    }

    /// Number of elements; bounds the transport loop.
    fn cardinality(&self) -> usize;
}

/// A sign-preserving bijection between two signed sets.
pub trait SignedBijection<S: SignedSet, T: SignedSet> {
    fn forward(&self, s: &S::Element) -> Result<T::Element>;
    fn backward(&self, t: &T::Element) -> Result<S::Element>;
}

/// Any pair of closures is a bijection.
pub struct FnBijection<F, G>(pub F, pub G);

impl<S, T, F, G> SignedBijection<S, T> for FnBijection<F, G>
where
    S: SignedSet,
    T: SignedSet,
    F: Fn(&S::Element) -> Result<T::Element>,
    G: Fn(&T::Element) -> Result<S::Element>,
{
    fn forward(&self, s: &S::Element) -> Result<T::Element> {
        (self.0)(s)
    }

    fn backward(&self, t: &T::Element) -> Result<S::Element> {
        (self.1)(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Visit<A, B> {
    Source(A),
    Target(B),
}

/// Every element visited, in order, starting at the source fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportTrace<A, B> {
    pub visits: Vec<Visit<A, B>>,
    /// Passes through `f . I . f^-1 . I'`.
    pub loops: usize,
}

impl<A, B> TransportTrace<A, B> {
    /// Number of visits on the target side; 1 when `f(t)` is already fixed.
    pub fn target_visits(&self) -> usize {
        self.visits.iter().filter(|v| matches!(v, Visit::Target(_))).count()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GmOptions {
    /// Check the involution and sign axioms on each visited element.
    pub verify: bool,
    /// Loop cap; defaults to twice the source cardinality.
    pub cap: Option<usize>,
}

fn check_element<S: SignedSet>(set: &S, e: &S::Element) -> Result<()> {
    let image = set.involution(e);
    if set.involution(&image) != *e {
        return Err(RookError::InvolutionViolation(format!("{e:?}")));
    }
    if image == *e {
        if set.sign(e) != Sign::Plus {
            return Err(RookError::SignViolation(format!("negative fixed point {e:?}")));
        }
    } else if set.sign(&image) == set.sign(e) {
        return Err(RookError::SignViolation(format!("{e:?} and its image share a sign")));
    }
    Ok(())
}

/// The fixed point reached in the target and the path taken.
pub type Transported<S, T> = (
    <T as SignedSet>::Element,
    TransportTrace<<S as SignedSet>::Element, <T as SignedSet>::Element>,
);

/// Send a fixed point of `source` to a fixed point of `target`.
pub fn gm_transport<S, T, F>(
    source: &S,
    target: &T,
    f: &F,
    t: &S::Element,
    options: GmOptions,
) -> Result<Transported<S, T>>
where
    S: SignedSet,
    T: SignedSet,
    F: SignedBijection<S, T>,
{
    if !source.is_fixed(t) {
        return Err(RookError::NotFixedPoint);
    }
    let cap = options.cap.unwrap_or(2 * source.cardinality());
    let apply_f = |s: &S::Element| -> Result<T::Element> {
        let image = f.forward(s)?;
        if options.verify {
            check_element(source, s)?;
            check_element(target, &image)?;
            if source.sign(s) != target.sign(&image) {
                return Err(RookError::SignViolation(format!("f changes the sign of {s:?}")));
            }
            if f.backward(&image)? != *s {
                return Err(RookError::InvolutionViolation(format!("f is not inverted at {s:?}")));
            }
        }
        Ok(image)
    };

    let mut visits = vec![Visit::Source(t.clone())];
    let mut seen = HashSet::new();
    let mut current = apply_f(t)?;
    visits.push(Visit::Target(current.clone()));
    let mut loops = 0;
    while !target.is_fixed(&current) {
        if loops >= cap || !seen.insert(current.clone()) {
            return Err(RookError::IterationCapExceeded { cap });
        }
        loops += 1;
        let partner = target.involution(&current);
        visits.push(Visit::Target(partner.clone()));
        let back = f.backward(&partner)?;
        visits.push(Visit::Source(back.clone()));
        let flipped = source.involution(&back);
        if options.verify && flipped == back {
            return Err(RookError::SignViolation(format!("{back:?} is a negative fixed point")));
        }
        visits.push(Visit::Source(flipped.clone()));
        current = apply_f(&flipped)?;
        visits.push(Visit::Target(current.clone()));
    }
    Ok((current, TransportTrace { visits, loops }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Elements are integers; negative ones have sign minus. `pairs` lists
    /// the non-fixed orbits.
    struct Toy {
        elements: Vec<i32>,
        pairs: Vec<(i32, i32)>,
    }

    impl SignedSet for Toy {
        type Element = i32;
        fn sign(&self, e: &i32) -> Sign {
            Sign::from_parity(*e < 0)
        }
        fn involution(&self, e: &i32) -> i32 {
            for &(a, b) in &self.pairs {
                if *e == a {
                    return b;
                }
                if *e == b {
                    return a;
                }
            }
            *e
        }
        fn cardinality(&self) -> usize {
            self.elements.len()
        }
    }

    #[test]
    fn immediate_fixed_point() {
        let s = Toy {
            elements: vec![1],
            pairs: vec![],
        };
        let f = FnBijection(|x: &i32| Ok(*x + 10), |y: &i32| Ok(*y - 10));
        let (out, trace) = gm_transport(
            &s,
            &Toy {
                elements: vec![11],
                pairs: vec![],
            },
            &f,
            &1,
            GmOptions::default(),
        )
        .unwrap();
        assert_eq!(out, 11);
        assert_eq!(trace.target_visits(), 1);
        assert_eq!(trace.loops, 0);
    }

    #[test]
    fn crossing_toy_instance() {
        // S = {1, 2, -2}: 1 fixed, 2 <-> -2. S' = {11, 12, -12}: 12 fixed, 11 <-> -12.
        // f: 1 -> 11, 2 -> 12, -2 -> -12. From 1: f(1) = 11, I'(11) = -12,
        // f^-1(-12) = -2, I(-2) = 2, f(2) = 12 fixed.
        let s = Toy {
            elements: vec![1, 2, -2],
            pairs: vec![(2, -2)],
        };
        let t = Toy {
            elements: vec![11, 12, -12],
            pairs: vec![(11, -12)],
        };
        let f = FnBijection(
            |x: &i32| Ok(if *x > 0 { x + 10 } else { x - 10 }),
            |y: &i32| Ok(if *y > 0 { y - 10 } else { y + 10 }),
        );
        let (out, trace) = gm_transport(
            &s,
            &t,
            &f,
            &1,
            GmOptions {
                verify: true,
                cap: None,
            },
        )
        .unwrap();
        assert_eq!(out, 12);
        assert_eq!(trace.loops, 1);
        let signs: Vec<Sign> = trace
            .visits
            .iter()
            .map(|v| match v {
                Visit::Source(e) => s.sign(e),
                Visit::Target(e) => t.sign(e),
            })
            .collect();
        assert_eq!(
            signs,
            vec![Sign::Plus, Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus, Sign::Plus]
        );
        assert_eq!(
            gm_transport(&s, &t, &f, &2, GmOptions::default()),
            Err(RookError::NotFixedPoint)
        );
    }

    #[test]
    fn identity_is_identity() {
        let s = Toy {
            elements: vec![1, 3, 2, -2],
            pairs: vec![(2, -2)],
        };
        let id = FnBijection(|x: &i32| Ok(*x), |y: &i32| Ok(*y));
        for t in [1, 3] {
            assert_eq!(
                gm_transport(
                    &s,
                    &s,
                    &id,
                    &t,
                    GmOptions {
                        verify: true,
                        cap: None
                    }
                )
                .unwrap()
                .0,
                t
            );
        }
    }

    #[test]
    fn broken_sign_is_reported() {
        // I pairs two positive elements: the sign axiom fails.
        let s = Toy {
            elements: vec![1],
            pairs: vec![],
        };
        let t = Toy {
            elements: vec![11, 12],
            pairs: vec![(11, 12)],
        };
        let f = FnBijection(|x: &i32| Ok(*x + 10), |y: &i32| Ok(*y - 10));
        let err = gm_transport(
            &s,
            &t,
            &f,
            &1,
            GmOptions {
                verify: true,
                cap: None,
            },
        )
        .unwrap_err();
        assert!(matches!(err, RookError::SignViolation(_)));
    }

    #[test]
    fn cycling_hits_the_cap() {
        // Without verification a non-sign-reversing I' can cycle forever.
        let s = Toy {
            elements: vec![1, 2],
            pairs: vec![],
        };
        let t = Toy {
            elements: vec![11, 12],
            pairs: vec![(11, 12)],
        };
        let f = FnBijection(|x: &i32| Ok(*x + 10), |y: &i32| Ok(*y - 10));
        let err = gm_transport(&s, &t, &f, &1, GmOptions::default()).unwrap_err();
        assert_eq!(err, RookError::IterationCapExceeded { cap: 4 });
    }
}
