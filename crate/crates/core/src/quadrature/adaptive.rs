use super::kronrod::gk21;
use super::{Estimate, QuadValue, QuadratureError, QuadratureSpec};
use crate::exec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Map {
    Identity,
    /// `[at, inf)` as `x = at + scale (1 - t) / t`, `t` in (0, 1].
    Upper {
        at: f64,
        scale: f64,
    },
    /// `(-inf, at]` as `x = at - scale (1 - t) / t`.
    Lower {
        at: f64,
        scale: f64,
    },
}

impl Map {
    fn apply<T: QuadValue>(self, f: &impl Fn(f64) -> T, t: f64) -> T {
        match self {
            Map::Identity => f(t),
            Map::Upper { at, scale } => f(at + scale * (1.0 - t) / t) * (scale / (t * t)),
            Map::Lower { at, scale } => f(at - scale * (1.0 - t) / t) * (scale / (t * t)),
        }
    }

    fn position(self, t: f64) -> f64 {
        match self {
            Map::Identity => t,
            Map::Upper { at, scale } => at + scale * (1.0 - t) / t,
            Map::Lower { at, scale } => at - scale * (1.0 - t) / t,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Segment {
    lo: f64,
    hi: f64,
    map: Map,
}

impl Segment {
    pub(crate) fn new(lo: f64, hi: f64, map: Map) -> Self {
        Segment { lo, hi, map }
    }

    fn splittable(&self) -> bool {
        let mid = 0.5 * (self.lo + self.hi);
        mid > self.lo && mid < self.hi && (self.hi - self.lo) > 1e-13 * self.lo.abs().max(self.hi.abs())
    }

    fn halves(&self) -> [Segment; 2] {
        let mid = 0.5 * (self.lo + self.hi);
        [
            Segment::new(self.lo, mid, self.map),
            Segment::new(mid, self.hi, self.map),
        ]
    }
}

struct Panel<T> {
    segment: Segment,
    value: T,
    error: f64,
}

fn evaluate<T: QuadValue>(f: &(impl Fn(f64) -> T + Sync), segment: Segment) -> Result<Panel<T>, QuadratureError> {
    let mapped = |t: f64| segment.map.apply(f, t);
    match gk21(&mapped, segment.lo, segment.hi) {
        Some(sum) => Ok(Panel {
            segment,
            value: sum.value,
            error: sum.error,
        }),
        None => Err(QuadratureError::NonFinite {
            at: segment.map.position(0.5 * (segment.lo + segment.hi)),
        }),
    }
}

fn evaluate_all<T: QuadValue>(
    f: &(impl Fn(f64) -> T + Sync),
    segments: &[Segment],
) -> Result<Vec<Panel<T>>, QuadratureError> {
    exec::map(segments, |s| evaluate(f, *s)).into_iter().collect()
}

fn totals<T: QuadValue>(panels: &[Panel<T>]) -> (T, f64) {
    panels
        .iter()
        .fold((T::ZERO, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

pub(crate) fn integrate_segments<T: QuadValue>(
    f: &(impl Fn(f64) -> T + Sync),
    segments: Vec<Segment>,
    spec: &QuadratureSpec,
) -> Result<Estimate<T>, QuadratureError> {
    let mut panels = evaluate_all(f, &segments)?;
    let mut evaluations = 21 * panels.len();

    loop {
        let (value, error) = totals(&panels);
        let tolerance = spec.abs_tol.max(spec.rel_tol * value.magnitude());
        if error <= tolerance {
            return Ok(Estimate {
                value,
                error,
                evaluations,
            });
        }

        let fail = || QuadratureError::NonConvergence {
            estimate: value.as_complex(),
            error,
            subdivisions: panels.len(),
        };
        let room = spec.max_subdivisions.saturating_sub(panels.len());
        if room == 0 {
            return Err(fail());
        }

        // Split the worst panels until what is left fits in half the budget.
        let mut order: Vec<usize> = (0..panels.len()).collect();
        order.sort_by(|&a, &b| panels[b].error.total_cmp(&panels[a].error).then(a.cmp(&b)));
        let mut chosen = vec![false; panels.len()];
        let mut remaining = error;
        let mut count = 0;
        for &i in &order {
            if remaining <= 0.5 * tolerance || count == room {
                break;
            }
            if panels[i].segment.splittable() {
                chosen[i] = true;
                remaining -= panels[i].error;
                count += 1;
            }
        }
        if count == 0 {
            return Err(fail());
        }

        let children: Vec<Segment> = panels
            .iter()
            .zip(&chosen)
            .filter(|(_, &c)| c)
            .flat_map(|(p, _)| p.segment.halves())
            .collect();
        let mut fresh = evaluate_all(f, &children)?.into_iter();
        evaluations += 21 * children.len();

        let mut next = Vec::with_capacity(panels.len() + count);
        for (panel, split) in panels.into_iter().zip(chosen) {
            if split {
                next.push(fresh.next().unwrap());
                next.push(fresh.next().unwrap());
            } else {
                next.push(panel);
            }
        }
        panels = next;
    }
}
