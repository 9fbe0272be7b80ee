use crate::error::RotorError;
use crate::ribbon::{Dart, DirectedCycle, RibbonGraph, SpanningTree, Vertex};

/// One outgoing dart per vertex, except possibly an excluded root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RotorConfig {
    rotors: Vec<Option<Dart>>,
}

impl RotorConfig {
    /// Validates that each rotor leaves its vertex and at most one vertex
    /// has no rotor.
    pub fn new(g: &RibbonGraph, rotors: Vec<Option<Dart>>) -> Result<Self, RotorError> {
        if rotors.len() != g.num_vertices() {
            return Err(RotorError::BadRotor(format!(
                "expected {} rotors, got {}",
                g.num_vertices(),
                rotors.len()
            )));
        }
        for (v, r) in rotors.iter().enumerate() {
            if let Some(d) = r {
                if d.0 >= g.num_darts() || g.tail(*d) != Vertex(v) {
                    return Err(RotorError::BadRotor(g.vertex_id(Vertex(v)).to_string()));
                }
            }
        }
        if rotors.iter().filter(|r| r.is_none()).count() > 1 {
            return Err(RotorError::BadRotor("more than one vertex without a rotor".into()));
        }
        Ok(RotorConfig { rotors })
    }

    pub fn total(g: &RibbonGraph, rotors: Vec<Dart>) -> Result<Self, RotorError> {
        Self::new(g, rotors.into_iter().map(Some).collect())
    }

    /// `tree` oriented towards `root`, with no rotor at the root.
    pub fn from_tree(g: &RibbonGraph, tree: &SpanningTree, root: Vertex) -> Self {
        RotorConfig {
            rotors: tree.orient_towards(g, root),
        }
    }

    /// `tree` oriented towards `tail(e)`, completed by `e` at the root.
    pub fn from_tree_and_dart(g: &RibbonGraph, tree: &SpanningTree, e: Dart) -> Self {
        let mut c = Self::from_tree(g, tree, g.tail(e));
        c.rotors[g.tail(e).0] = Some(e);
        c
    }

    pub fn get(&self, v: Vertex) -> Option<Dart> {
        self.rotors[v.0]
    }

    pub fn set(&mut self, v: Vertex, d: Option<Dart>) {
        self.rotors[v.0] = d;
    }

    pub fn rotors(&self) -> &[Option<Dart>] {
        &self.rotors
    }

    pub fn excluded_root(&self) -> Option<Vertex> {
        self.rotors.iter().position(Option::is_none).map(Vertex)
    }

    pub fn is_total(&self) -> bool {
        self.rotors.iter().all(Option::is_some)
    }

    /// Directed cycles of the functional graph `v -> head(rotor[v])`.
    pub fn cycles(&self, g: &RibbonGraph) -> Vec<DirectedCycle> {
        // 0 = unseen, 1 = on current walk, 2 = done
        let mut mark = vec![0u8; self.rotors.len()];
        let mut out = Vec::new();
        for start in 0..self.rotors.len() {
            let mut walk = Vec::new();
            let mut v = start;
            while mark[v] == 0 {
                mark[v] = 1;
                walk.push(v);
                match self.rotors[v] {
                    Some(d) => v = g.head(d).0,
                    None => break,
                }
            }
            if mark[v] == 1 && self.rotors[v].is_some() {
                if let Some(pos) = walk.iter().position(|&w| w == v) {
                    let darts = walk[pos..].iter().map(|&w| self.rotors[w].unwrap()).collect();
                    out.push(DirectedCycle::new(g, darts).expect("functional graph cycle"));
                }
            }
            for w in walk {
                mark[w] = 2;
            }
        }
        out.sort();
        out
    }

    /// The unique cycle, if the configuration is total and has exactly one.
    pub fn unique_cycle(&self, g: &RibbonGraph) -> Result<DirectedCycle, RotorError> {
        if !self.is_total() {
            return Err(RotorError::NotUnicycle("configuration has an excluded root".into()));
        }
        let mut cycles = self.cycles(g);
        if cycles.len() != 1 {
            return Err(RotorError::NotUnicycle(format!("{} cycles", cycles.len())));
        }
        Ok(cycles.pop().unwrap())
    }

    /// For a tree-shaped configuration, the spanning tree it spans.
    pub fn tree(&self, g: &RibbonGraph) -> Result<SpanningTree, RotorError> {
        let edges = self.rotors.iter().flatten().map(|d| d.edge()).collect();
        Ok(SpanningTree::new(g, edges)?)
    }

    /// Deletes the rotor at `v`, the tree `T_v(rho)` of a unicycle.
    pub fn without(&self, v: Vertex) -> RotorConfig {
        let mut c = self.clone();
        c.rotors[v.0] = None;
        c
    }

    pub fn display(&self, g: &RibbonGraph) -> Vec<Option<String>> {
        self.rotors.iter().map(|r| r.map(|d| g.dart_name(d))).collect()
    }
}

/// Rotor configuration plus chip position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    pub config: RotorConfig,
    pub chip: Vertex,
}

/// A total configuration with exactly one cycle and the chip on that cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unicycle {
    state: State,
    cycle: DirectedCycle,
}

impl Unicycle {
    pub fn new(g: &RibbonGraph, config: RotorConfig, chip: Vertex) -> Result<Self, RotorError> {
        let cycle = config.unique_cycle(g)?;
        if !cycle.contains_vertex(g, chip) {
            return Err(RotorError::NotUnicycle(format!(
                "chip at {} is off the cycle",
                g.vertex_id(chip)
            )));
        }
        Ok(Unicycle {
            state: State { config, chip },
            cycle,
        })
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn config(&self) -> &RotorConfig {
        &self.state.config
    }

    pub fn chip(&self) -> Vertex {
        self.state.chip
    }

    pub fn cycle(&self) -> &DirectedCycle {
        &self.cycle
    }
}

/// Upper bound on total configurations enumerated by [`all_unicycles`].
pub const MAX_CONFIGS: u128 = 1_000_000;

/// Number of total rotor configurations, `prod deg(v)`.
pub fn config_count(g: &RibbonGraph) -> u128 {
    g.vertices().map(|v| g.degree(v) as u128).product()
}

/// Every unicycle of `g`: each total configuration with one cycle, paired
/// with each vertex of that cycle. Deterministic order.
pub fn all_unicycles(g: &RibbonGraph) -> Result<Vec<Unicycle>, RotorError> {
    let total = config_count(g);
    if total > MAX_CONFIGS {
        return Err(crate::error::GraphError::TooLarge {
            what: "rotor configuration count",
            size: total.min(usize::MAX as u128) as usize,
            cap: MAX_CONFIGS as usize,
        }
        .into());
    }
    let n = g.num_vertices();
    let mut digits = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let rotors: Vec<Option<Dart>> = g.vertices().map(|v| Some(g.rotation_at(v)[digits[v.0]])).collect();
        let config = RotorConfig { rotors };
        let cycles = config.cycles(g);
        if cycles.len() == 1 {
            let mut on: Vec<Vertex> = cycles[0].vertices(g).collect();
            on.sort();
            for chip in on {
                out.push(Unicycle {
                    state: State {
                        config: config.clone(),
                        chip,
                    },
                    cycle: cycles[0].clone(),
                });
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < g.degree(Vertex(i)) {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtins;
    use crate::ribbon::spanning_trees;

    #[test]
    fn tree_configs() {
        let g = builtins::complete(4);
        for t in spanning_trees(&g).unwrap() {
            for r in g.vertices() {
                let c = RotorConfig::from_tree(&g, &t, r);
                assert_eq!(c.excluded_root(), Some(r));
                assert!(c.cycles(&g).is_empty());
                assert_eq!(c.tree(&g).unwrap(), t);
            }
        }
    }

    #[test]
    fn unicycle_validation() {
        let g = builtins::cycle(3);
        let forward: Vec<Dart> = g.vertices().map(|v| g.rotation_at(v)[0]).collect();
        let c = RotorConfig::total(&g, forward).unwrap();
        assert!(Unicycle::new(&g, c, Vertex(0)).is_ok());

        let g = builtins::complete(4);
        let a_b = g.dart_from(g.edge("e1").unwrap(), Vertex(0)).unwrap();
        let b_a = a_b.reverse();
        let c_a = g.dart_from(g.edge("e2").unwrap(), Vertex(2)).unwrap();
        let d_c = g.dart_from(g.edge("e6").unwrap(), Vertex(3)).unwrap();
        let config = RotorConfig::total(&g, vec![a_b, b_a, c_a, d_c]).unwrap();
        let u = Unicycle::new(&g, config.clone(), Vertex(0)).unwrap();
        assert!(u.cycle().is_degenerate());
        assert!(matches!(Unicycle::new(&g, config, Vertex(3)), Err(RotorError::NotUnicycle(_))));
    }

    #[test]
    fn bad_rotor_rejected() {
        let g = builtins::path2();
        let d = g.rotation_at(Vertex(0))[0];
        assert!(RotorConfig::total(&g, vec![d, d]).is_err());
        assert!(RotorConfig::new(&g, vec![None, None]).is_err());
    }

    #[test]
    fn unicycle_counts() {
        // B2: 4 configurations, all with one 2-cycle, two chip positions each
        assert_eq!(all_unicycles(&builtins::banana(2, true)).unwrap().len(), 8);
        // C3: the two oriented triangles (3 chips each) and six configurations
        // with a back-and-forth 2-cycle (2 chips each)
        let c3 = all_unicycles(&builtins::cycle(3)).unwrap();
        assert_eq!(c3.len(), 18);
        assert!(c3.iter().all(|u| u.cycle().contains_vertex(&builtins::cycle(3), u.chip())));
    }
}
