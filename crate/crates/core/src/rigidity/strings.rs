use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::GentleQuiver;

/// One step of a walk: along an arrow, or against it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    /// Vertex where the step starts.
    pub fn from(self, q: &GentleQuiver) -> usize {
        let a = &q.arrows()[self.arrow];
        if self.inverse {
            a.tgt
        } else {
            a.src
        }
    }

    /// Vertex where the step ends.
    pub fn to(self, q: &GentleQuiver) -> usize {
        let a = &q.arrows()[self.arrow];
        if self.inverse {
            a.src
        } else {
            a.tgt
        }
    }
}

/// A string: a walk with no backtracking that avoids relations in both
/// directions. Stored in canonical orientation (the smaller of the word and
/// its inverse).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl StringWord {
    pub fn lazy(v: usize) -> Self {
        StringWord {
            start: v,
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Vertices visited, `len() + 1` of them.
    pub fn walk(&self, q: &GentleQuiver) -> Vec<usize> {
        let mut v = vec![self.start];
        v.extend(self.letters.iter().map(|l| l.to(q)));
        v
    }

    pub fn inverse(&self, q: &GentleQuiver) -> StringWord {
        let end = *self.walk(q).last().unwrap();
        StringWord {
            start: end,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn display<'a>(&'a self, q: &'a GentleQuiver) -> impl fmt::Display + 'a {
        DisplayWord { w: self, q }
    }
}

struct DisplayWord<'a> {
    w: &'a StringWord,
    q: &'a GentleQuiver,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_empty() {
            return write!(f, "e({})", self.q.vertices()[self.w.start]);
        }
        for (i, l) in self.w.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.q.arrows()[l.arrow].id)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Whether `next` may follow `last` in a string.
fn may_follow(q: &GentleQuiver, last: Letter, next: Letter) -> bool {
    if last.arrow == next.arrow && last.inverse != next.inverse {
        return false;
    }
    match (last.inverse, next.inverse) {
        (false, false) => !q.is_relation(last.arrow, next.arrow),
        // walking against a then against b follows the path b·a backwards
        (true, true) => !q.is_relation(next.arrow, last.arrow),
        _ => true,
    }
}

/// All strings up to inversion: one lazy string per vertex, then the longer
/// ones by length and letters. Errors with `BandDetected` when a string
/// longer than twice the number of arrows exists.
pub fn enumerate_strings(q: &GentleQuiver) -> Result<Vec<StringWord>> {
    let bound = 2 * q.arrows().len();
    let mut out: Vec<StringWord> = (0..q.num_vertices()).map(StringWord::lazy).collect();
    let mut stack: Vec<StringWord> = out.clone();
    while let Some(w) = stack.pop() {
        let end = *w.walk(q).last().unwrap();
        let candidates = q
            .outgoing(end)
            .map(|a| Letter {
                arrow: a,
                inverse: false,
            })
            .chain(q.incoming(end).map(|a| Letter {
                arrow: a,
                inverse: true,
            }));
        for l in candidates {
            if let Some(&last) = w.letters.last() {
                if !may_follow(q, last, l) {
                    continue;
                }
            }
            let mut next = w.clone();
            next.letters.push(l);
            if next.len() > bound {
                return Err(Error::BandDetected { bound });
            }
            if next.letters <= next.inverse(q).letters {
                out.push(next.clone());
            }
            stack.push(next);
        }
    }
    out[q.num_vertices()..].sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.letters.cmp(&b.letters))
    });
    Ok(out)
}
