//! Identities relating the action at neighbouring roots to reversibility of
//! the fundamental cycles `C_e(T)`.
//!
//! For a dart `e` from `y` to `x` and a tree `T`, `rho_e(T)` is `T` oriented
//! towards `y` plus the rotor `e` at `y`; its cycle is `C_e(T)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use super::action::TorsorTable;
use crate::error::SandpileError;
use crate::ribbon::{is_planar, Dart, DirectedCycle, RibbonGraph, Vertex};
use crate::rotor::{is_reversible, reverse_on_cycle, route_first_arrival, route_to_root, RotorConfig, Unicycle};

/// Counts of applicable instances and of violations, with the first
/// violation kept as a witness.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PartReport {
    pub checked: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl PartReport {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GeodesicReport {
    pub planar: bool,
    /// Instances `(T, e, s)` where `(y-x)_x((s-y)_y(T)) = (s-x)_x(T)`.
    pub eq1_holds: usize,
    pub eq1_fails: usize,
    /// Failures of the equation where neither cycle is reversible.
    pub eq1_fails_neither_reversible: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eq1_first_failure: Option<Value>,
    /// Both cycles reversible implies the equation.
    pub both_reversible: PartReport,
    /// The equation implies the two cycles agree on reversibility.
    pub equation_transfers: PartReport,
    /// `(z-s)_x(T) = (z-s)_s(T) = (z-s)_y(T)` for the first vertex `s` of
    /// the geodesic `x..y` reached from `(T_x, z)`.
    pub run_until: PartReport,
    /// Planar only: `(s-y)_x(T) = (s-y)_y(T)` for `s` on the geodesic.
    pub adjacent_on_geodesic: PartReport,
    /// Planar only: `(z-x)_x(T) = (z-x)_y(T)` for adjacent `x, y`.
    pub adjacent_roots: PartReport,
    /// `(s-y)_y(T)` read off the run `(rho_e(T), s) ~>_y (sigma, y)`.
    pub rotor_computes_action: PartReport,
    /// Reversing `C_e(T)` in `rho_e(T)` gives `rho_{e-bar}(T)`.
    pub reversal_identity: PartReport,
}

impl GeodesicReport {
    pub fn pass(&self) -> bool {
        [
            &self.both_reversible,
            &self.equation_transfers,
            &self.run_until,
            &self.adjacent_on_geodesic,
            &self.adjacent_roots,
            &self.rotor_computes_action,
            &self.reversal_identity,
        ]
        .iter()
        .all(|p| p.pass())
    }
}

struct Ctx<'a> {
    g: &'a RibbonGraph,
    table: &'a TorsorTable,
    reversible: BTreeMap<DirectedCycle, bool>,
}

impl Ctx<'_> {
    fn reversible(&mut self, c: &DirectedCycle) -> Result<bool, SandpileError> {
        if let Some(&r) = self.reversible.get(c) {
            return Ok(r);
        }
        let r = is_reversible(self.g, c)?;
        self.reversible.insert(c.clone(), r);
        Ok(r)
    }

    fn tree_ids(&self, i: usize) -> Vec<String> {
        self.table.trees()[i].ids(self.g)
    }

    fn v(&self, v: Vertex) -> &str {
        self.g.vertex_id(v)
    }
}

pub fn check_geodesic_identities(g: &RibbonGraph, table: &TorsorTable) -> Result<GeodesicReport, SandpileError> {
    let mut ctx = Ctx {
        g,
        table,
        reversible: BTreeMap::new(),
    };
    let mut report = GeodesicReport {
        planar: is_planar(g)?,
        ..GeodesicReport::default()
    };
    for t in 0..table.len() {
        for e in g.darts() {
            lemma_on_geodesic(&mut ctx, &mut report, t, e)?;
            rotor_identities(&ctx, &mut report, t, e)?;
        }
        let pairs: BTreeSet<(Vertex, Vertex)> = g.darts().map(|e| (g.head(e), g.tail(e))).collect();
        for (x, y) in pairs {
            run_until_identities(&ctx, &mut report, t, x, y)?;
        }
    }
    Ok(report)
}

fn lemma_on_geodesic(ctx: &mut Ctx, report: &mut GeodesicReport, t: usize, e: Dart) -> Result<(), SandpileError> {
    let (g, table) = (ctx.g, ctx.table);
    let (y, x) = (g.tail(e), g.head(e));
    let tree = &table.trees()[t];
    let c = tree.fundamental_cycle(g, e);
    let rev_c = ctx.reversible(&c)?;
    for s in tree.geodesic(g, x, y).vertices(g) {
        let t2 = table.act_difference(y, s, y, t);
        let lhs = table.act_difference(x, y, x, t2);
        let rhs = table.act_difference(x, s, x, t);
        let c2 = table.trees()[t2].fundamental_cycle(g, e);
        let rev_c2 = ctx.reversible(&c2)?;
        let eq1 = lhs == rhs;
        let witness = || {
            json!({
                "tree": ctx.tree_ids(t),
                "e": g.dart_name(e),
                "s": ctx.v(s),
                "cycle_reversible": rev_c,
                "moved_cycle_reversible": rev_c2,
                "lhs": ctx.tree_ids(lhs),
                "rhs": ctx.tree_ids(rhs),
            })
        };
        if eq1 {
            report.eq1_holds += 1;
        } else {
            report.eq1_fails += 1;
            if !rev_c && !rev_c2 {
                report.eq1_fails_neither_reversible += 1;
            }
            if report.eq1_first_failure.is_none() {
                report.eq1_first_failure = Some(witness());
            }
        }
        if rev_c && rev_c2 {
            report.both_reversible.record(eq1, witness);
        }
        if eq1 {
            report.equation_transfers.record(rev_c == rev_c2, witness);
        }
        if report.planar && s != y {
            // (s-y)_x(T) = (s-y)_y(T)
            let at_x = table.act_difference(x, s, y, t);
            report.adjacent_on_geodesic.record(at_x == t2, || {
                json!({"tree": ctx.tree_ids(t), "x": ctx.v(x), "y": ctx.v(y), "s": ctx.v(s)})
            });
        }
    }
    Ok(())
}

fn rotor_identities(ctx: &Ctx, report: &mut GeodesicReport, t: usize, e: Dart) -> Result<(), SandpileError> {
    let (g, table) = (ctx.g, ctx.table);
    let (y, x) = (g.tail(e), g.head(e));
    let tree = &table.trees()[t];
    let rho = RotorConfig::from_tree_and_dart(g, tree, e);
    let rho_bar = RotorConfig::from_tree_and_dart(g, tree, e.reverse());
    let c = tree.fundamental_cycle(g, e);
    let reversed = reverse_on_cycle(g, &rho, &c)?;
    report.reversal_identity.record(reversed == rho_bar, || {
        json!({"tree": ctx.tree_ids(t), "e": g.dart_name(e)})
    });
    if tree.contains(e.edge()) {
        return Ok(());
    }
    for s in tree.geodesic(g, x, y).vertices(g) {
        let u = Unicycle::new(g, rho.clone(), s)?;
        let (sigma, _) = route_first_arrival(g, &u, y)?;
        let routed = sigma.without(y).tree(g)?;
        let expected = &table.trees()[table.act_difference(y, s, y, t)];
        report.rotor_computes_action.record(routed == *expected, || {
            json!({"tree": ctx.tree_ids(t), "e": g.dart_name(e), "s": ctx.v(s)})
        });
    }
    Ok(())
}

fn run_until_identities(ctx: &Ctx, report: &mut GeodesicReport, t: usize, x: Vertex, y: Vertex) -> Result<(), SandpileError> {
    let (g, table) = (ctx.g, ctx.table);
    let tree = &table.trees()[t];
    let on_geodesic: BTreeSet<Vertex> = tree.geodesic(g, x, y).vertices(g).into_iter().collect();
    let rooted = RotorConfig::from_tree(g, tree, x);
    for z in g.vertices() {
        let trace = route_to_root(g, &rooted, z)?;
        let s = trace
            .positions()
            .find(|v| on_geodesic.contains(v))
            .expect("the run ends at x, which is on the geodesic");
        let at_s = table.act_difference(s, z, s, t);
        let at_x = table.act_difference(x, z, s, t);
        let at_y = table.act_difference(y, z, s, t);
        report.run_until.record(at_x == at_s && at_y == at_s, || {
            json!({"tree": ctx.tree_ids(t), "x": ctx.v(x), "y": ctx.v(y), "z": ctx.v(z), "s": ctx.v(s)})
        });
        if report.planar {
            let zx_x = table.act_difference(x, z, x, t);
            let zx_y = table.act_difference(y, z, x, t);
            report.adjacent_roots.record(zx_x == zx_y, || {
                json!({"tree": ctx.tree_ids(t), "x": ctx.v(x), "y": ctx.v(y), "z": ctx.v(z)})
            });
        }
    }
    Ok(())
}
