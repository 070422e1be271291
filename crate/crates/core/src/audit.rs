//! Structural necessary conditions for critical graphs, checked one by one
//! against a graph already known to be critical.
//!
//! Each assertion carries its hypotheses; outside them the verdict is
//! `NotApplicable`. A `Fail` on a theorem for a verified critical graph means
//! a bug somewhere. A `Fail` on a conjecture is a finding.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::automorphism::are_isomorphic;
use crate::criticality::{is_critical, CriticalityError, CriticalityReport};
use crate::distinguishing::{
    binomial, count_inequivalent_distinguishing_with_budget, disjoint_copies_with_budget,
    distinguishing_number, visit_distinguishing_labelings, DistError, DEFAULT_LABELING_BUDGET,
};
use crate::graph::{connected_components, Graph, NamedGraph};
use crate::metrics::{has_induced_star, is_k_self_centered, metrics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssertionKind {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub id: &'static str,
    pub kind: AssertionKind,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructuralAudit {
    pub entries: Vec<AuditEntry>,
}

impl StructuralAudit {
    pub fn get(&self, id: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn theorem_failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries
            .iter()
            .filter(|e| e.kind == AssertionKind::Theorem && e.verdict == Verdict::Fail)
    }

    pub fn conjecture_failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries
            .iter()
            .filter(|e| e.kind == AssertionKind::Conjecture && e.verdict == Verdict::Fail)
    }

    /// No theorem assertion failed.
    pub fn theorems_hold(&self) -> bool {
        self.theorem_failures().next().is_none()
    }

    fn check(&mut self, id: &'static str, kind: AssertionKind, applies: bool, holds: impl FnOnce() -> (bool, String)) {
        let (verdict, detail) = if applies {
            let (ok, detail) = holds();
            (if ok { Verdict::Pass } else { Verdict::Fail }, detail)
        } else {
            (Verdict::NotApplicable, String::new())
        };
        self.entries.push(AuditEntry { id, kind, verdict, detail });
    }

    fn theorem(&mut self, id: &'static str, applies: bool, holds: impl FnOnce() -> (bool, String)) {
        self.check(id, AssertionKind::Theorem, applies, holds)
    }

    fn try_theorem(
        &mut self,
        id: &'static str,
        applies: bool,
        holds: impl FnOnce() -> Result<(bool, String), AuditError>,
    ) -> Result<(), AuditError> {
        let result = if applies { Some(holds()?) } else { None };
        self.theorem(id, applies, || result.expect("evaluated when applicable"));
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("the audit requires a critical graph")]
    NotCritical,
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Criticality(#[from] CriticalityError),
}

pub fn audit_structural_theorems(g: &Graph, report: &CriticalityReport) -> Result<StructuralAudit, AuditError> {
    audit_with_budget(g, report, DEFAULT_LABELING_BUDGET)
}

/// As [`audit_structural_theorems`], with an explicit limit on `k^n` for
/// the labeling enumerations.
pub fn audit_with_budget(
    g: &Graph,
    report: &CriticalityReport,
    budget: u128,
) -> Result<StructuralAudit, AuditError> {
    if !report.critical {
        return Err(AuditError::NotCritical);
    }
    let n = g.order();
    let d = report.d;
    let m = metrics(g);
    let co = g.complement();
    let connected = m.component_count == 1;
    let co_connected = co.is_connected();
    let is_kd = n == d && g.is_complete();
    let is_co_kd = n == d && g.is_edgeless();
    let is_kdd = d >= 2 && n == 2 * (d - 1) && are_isomorphic(g, &bipartite(d - 1));
    let is_c5 = n == 5 && are_isomorphic(g, &NamedGraph::Cycle(5).build().unwrap());
    let is_k2 = n == 2 && g.is_complete();
    let delta = m.max_degree;
    let mut a = StructuralAudit::default();

    a.theorem("small-d", d <= 2, || {
        (n == d, format!("d={d}, n={n}"))
    });
    a.theorem("delta-bound", connected && d >= 3, || {
        let special = is_kd || is_kdd || is_c5;
        let ok = if special { delta == d - 1 } else { delta >= d };
        (ok, format!("Δ={delta}, d={d}, equality graph={special}"))
    });
    a.theorem("min-degree", connected && co_connected && !is_c5 && d >= 3, || {
        (m.min_degree + d < n, format!("δ={}, n-d-1={}", m.min_degree, n as isize - d as isize - 1))
    });
    a.theorem("star-free", d >= 3, || {
        (!has_induced_star(g, d), format!("K1,{d} induced: {}", has_induced_star(g, d)))
    });
    a.theorem("clique-bound", d >= 3 && !is_kd, || {
        (m.clique_number < d, format!("ω={}", m.clique_number))
    });
    a.theorem("independence-bound", d >= 3 && !is_co_kd, || {
        (m.independence_number < d, format!("α={}", m.independence_number))
    });
    a.theorem("triangle-free", connected && d >= 2 && m.triangle_free, || {
        (is_k2 || is_kdd || is_c5, "triangle-free and critical".into())
    });
    a.theorem("claw-free", connected && co_connected && m.claw_free && !is_c5 && d >= 2, || {
        (false, "claw-free with connected complement, yet critical".into())
    });
    a.theorem("self-centered-complement", !connected && m.min_degree > 0, || {
        let ok = co_connected && is_k_self_centered(&co, 2).unwrap_or(false);
        (ok, format!("complement eccentricities all 2: {ok}"))
    });
    a.theorem("three-critical-max-degree", d == 3, || (delta <= 2, format!("Δ={delta}")));
    a.theorem("tree", g.is_tree() && !report.vacuous, || (is_k2, format!("tree of order {n}")));

    let co_report = is_critical(&co)?;
    a.theorem("complement-critical", true, || {
        (co_report.critical && co_report.d == d, format!("complement: D={}, critical={}", co_report.d, co_report.critical))
    });

    disconnected_assertions(&mut a, g, d, budget)?;

    a.check("conjecture-regularity", AssertionKind::Conjecture, true, || match m.regular {
        Some(k) => (k <= d, format!("{k}-regular")),
        None => (false, format!("degree sequence {:?}", m.degree_sequence)),
    });
    a.check("conjecture-complete-components", AssertionKind::Conjecture, !connected, || {
        let all = connected_components(g).iter().all(|c| c.graph.is_complete());
        (all, format!("components complete: {all}"))
    });
    Ok(a)
}

fn bipartite(s: usize) -> Graph {
    NamedGraph::CompleteBipartite(s, s).build().expect("small order")
}

fn is_prime(x: usize) -> bool {
    x >= 2 && (2..).take_while(|p| p * p <= x).all(|p| x % p != 0)
}

/// Assertions about disconnected critical graphs with `d >= 3`.
fn disconnected_assertions(a: &mut StructuralAudit, g: &Graph, d: usize, budget: u128) -> Result<(), AuditError> {
    let comps = connected_components(g);
    let c = comps.len();
    let disconnected = c > 1 && d >= 3;
    let iso = comps.iter().all(|x| are_isomorphic(&x.graph, &comps[0].graph));
    a.theorem("isomorphic-components", disconnected, || (iso, format!("{c} components")));

    let base = disconnected && iso;
    let h = &comps[0].graph;
    let hn = h.order();
    let dh = if base { distinguishing_number(h)?.value } else { 0 };
    let count = |k: usize| -> Result<u128, AuditError> {
        Ok(count_inequivalent_distinguishing_with_budget(h, k as u32, budget)?.inequivalent)
    };
    let c128 = c as u128;

    a.try_theorem("proper-multiples", base, || {
        for i in 1..c {
            let di = disjoint_copies_with_budget(h, i, budget)?;
            if di >= d {
                return Ok((false, format!("D({i}H)={di}")));
            }
        }
        Ok((true, format!("D(iH) < {d} for i < {c}")))
    })?;
    a.try_theorem("component-count", base, || {
        let below = count(d - 1)?;
        let at = count(d)?;
        Ok((c128 == below + 1 && at >= c128, format!("c={c}, D(H,d-1)={below}, D(H,d)={at}")))
    })?;
    a.try_theorem("count-exceeds", base, || {
        let at = count(dh)?;
        Ok((c128 > at, format!("c={c}, D(H,D(H))={at}")))
    })?;

    let complete_form = || {
        let s = hn;
        let ok = h.is_complete() && c128 == binomial(d - 1, s) + 1 && binomial(d, s) >= c128;
        (ok, format!("H complete: {}, s={s}, c={c}", h.is_complete()))
    };
    a.theorem("complete-components", base && 2 * c >= d, complete_form);
    let alpha = if base { metrics(g).independence_number } else { 0 };
    a.theorem("alpha-complete-components", base && (alpha == c || is_prime(alpha)), complete_form);

    let few = base && d >= 5 && 2 * c < d;
    a.try_theorem("small-count", few, || {
        let at = count(dh)?;
        let ok = d == dh + 1 && dh >= 4 && 2 * at + 1 < dh as u128;
        Ok((ok, format!("D(H)={dh}, D(H,D(H))={at}")))
    })?;
    let non_complete = few && !h.is_complete();
    a.try_theorem("color-class-degrees", non_complete, || {
        let mut bad = None;
        visit_distinguishing_labelings(h, dh as u32, budget, |colors| {
            let mut seqs = vec![Vec::new(); dh];
            for (v, &col) in colors.iter().enumerate() {
                seqs[col as usize - 1].push(h.degree(v));
            }
            for s in &mut seqs {
                s.sort_unstable();
            }
            if seqs.windows(2).any(|w| w[0] != w[1]) {
                bad = Some(colors.to_vec());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
        Ok(match bad {
            Some(l) => (false, format!("labeling {l:?} has unequal class degree sequences")),
            None => (true, "all class degree sequences equal".into()),
        })
    })?;
    a.theorem("degree-count", non_complete, || {
        let degrees = g.degrees();
        let need = 2 * c * (d - 1);
        let ok = degrees.iter().all(|&p| degrees.iter().filter(|&&q| q == p).count() >= need);
        (ok, format!("every degree needs {need} vertices"))
    });
    a.theorem("divisibility", few, || (hn % dh == 0, format!("D(H)={dh}, |V(H)|={hn}")));
    let co = g.complement();
    let excluded = (co.order() == d && co.is_complete())
        || (co.order() == 2 * (d - 1) && are_isomorphic(&co, &bipartite(d - 1)));
    a.try_theorem("component-bound", few && !excluded, || {
        let at = count(dh)?;
        let ok = 3 * c + 1 <= d && 3 * at + 3 <= dh as u128 && d >= 7 && dh >= 6;
        Ok((ok, format!("c={c}, d={d}, D(H)={dh}, D(H,D(H))={at}")))
    })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::copies;

    fn audit(g: &Graph) -> StructuralAudit {
        let r = is_critical(g).unwrap();
        assert!(r.critical);
        audit_structural_theorems(g, &r).unwrap()
    }

    fn verdict(a: &StructuralAudit, id: &str) -> Verdict {
        a.get(id).unwrap().verdict
    }

    #[test]
    fn two_k4_divisibility() {
        let a = audit(&copies(&NamedGraph::Complete(4).build().unwrap(), 2).unwrap());
        assert!(a.theorems_hold(), "{a:?}");
        assert_eq!(verdict(&a, "divisibility"), Verdict::Pass);
        assert_eq!(verdict(&a, "component-bound"), Verdict::NotApplicable);
        assert_eq!(verdict(&a, "conjecture-complete-components"), Verdict::Pass);
    }

    #[test]
    fn c5_equality_case() {
        let a = audit(&NamedGraph::Cycle(5).build().unwrap());
        assert!(a.theorems_hold(), "{a:?}");
        assert_eq!(verdict(&a, "delta-bound"), Verdict::Pass);
        assert_eq!(verdict(&a, "min-degree"), Verdict::NotApplicable);
        assert_eq!(verdict(&a, "conjecture-regularity"), Verdict::Pass);
    }

    #[test]
    fn edgeless_five_via_complement() {
        let a = audit(&Graph::empty(5).unwrap());
        assert!(a.theorems_hold(), "{a:?}");
        assert_eq!(verdict(&a, "complement-critical"), Verdict::Pass);
        assert_eq!(verdict(&a, "complete-components"), Verdict::Pass);
        assert_eq!(verdict(&a, "independence-bound"), Verdict::NotApplicable);
    }

    #[test]
    fn rejects_non_critical() {
        let p4 = NamedGraph::Path(4).build().unwrap();
        let r = is_critical(&p4).unwrap();
        assert_eq!(audit_structural_theorems(&p4, &r), Err(AuditError::NotCritical));
    }

    #[test]
    fn primes() {
        let ps: Vec<_> = (0..20).filter(|&x| is_prime(x)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
