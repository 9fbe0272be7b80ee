use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use indexmap::IndexMap;

use crate::error::{GraphError, SandpileError};
use crate::ribbon::{RibbonGraph, Vertex};

/// Integer combination of vertices; zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    coeffs: BTreeMap<Vertex, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single vertex `v`.
    pub fn vertex(v: Vertex) -> Self {
        Self::from_pairs([(v, 1)])
    }

    /// `v - r`.
    pub fn generator(v: Vertex, r: Vertex) -> Self {
        Self::from_pairs([(v, 1), (r, -1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Vertex, i64)>>(pairs: I) -> Self {
        let mut d = Divisor::zero();
        for (v, n) in pairs {
            d.add_at(v, n);
        }
        d
    }

    pub fn from_dense(values: &[i64]) -> Self {
        Self::from_pairs(values.iter().enumerate().map(|(i, &n)| (Vertex(i), n)))
    }

    pub fn add_at(&mut self, v: Vertex, n: i64) {
        let entry = self.coeffs.entry(v).or_insert(0);
        *entry += n;
        if *entry == 0 {
            self.coeffs.remove(&v);
        }
    }

    pub fn get(&self, v: Vertex) -> i64 {
        self.coeffs.get(&v).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, i64)> + '_ {
        self.coeffs.iter().map(|(&v, &n)| (v, n))
    }

    pub fn dense(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for (v, c) in self.iter() {
            out[v.0] = c;
        }
        out
    }

    pub fn require_degree(&self, expected: i64) -> Result<(), SandpileError> {
        let actual = self.degree();
        if actual != expected {
            return Err(SandpileError::DegreeMismatch { expected, actual });
        }
        Ok(())
    }

    /// Parses `{"a": 1, "b": -1}`.
    pub fn parse_json(g: &RibbonGraph, text: &str) -> Result<Self, GraphError> {
        let map: IndexMap<String, i64> = serde_json::from_str(text).map_err(|e| GraphError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut d = Divisor::zero();
        for (id, n) in map {
            let v = g.vertex(&id).ok_or(GraphError::UnknownVertex(id))?;
            d.add_at(v, n);
        }
        Ok(d)
    }

    pub fn to_json(&self, g: &RibbonGraph) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .iter()
            .map(|(v, n)| (g.vertex_id(v).to_string(), n.into()))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (v, n) in rhs.iter() {
            out.add_at(v, n);
        }
        out
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor::from_pairs(self.iter().map(|(v, n)| (v, -n)))
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        self + &(-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtins;

    #[test]
    fn arithmetic() {
        let (a, b) = (Vertex(0), Vertex(1));
        let d = Divisor::generator(a, b);
        assert_eq!(d.degree(), 0);
        assert!((&d - &d).is_zero());
        assert_eq!((&d + &d).get(a), 2);
        assert_eq!(Divisor::vertex(a).degree(), 1);
        assert!(Divisor::vertex(a).require_degree(0).is_err());
    }

    #[test]
    fn json() {
        let g = builtins::banana(3, true);
        let d = Divisor::parse_json(&g, r#"{"a": 1, "b": -1}"#).unwrap();
        assert_eq!(d, Divisor::generator(Vertex(0), Vertex(1)));
        assert_eq!(d.to_json(&g).to_string(), r#"{"a":1,"b":-1}"#);
        assert!(Divisor::parse_json(&g, r#"{"z": 1}"#).is_err());
        assert!(Divisor::parse_json(&g, "{}").unwrap().is_zero());
    }
}
