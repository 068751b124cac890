//! Hardness gadgets: partitioned subgraph isomorphism to two-pair weighted directed
//! multicut with both solution mappers, and multicolored clique to a permutation CSP.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, VertexId, VertexSet};
use crate::error::{input, Error, Result};
use crate::matrixgrid::{adj_of_permutation, ZeroOneMatrix};
use crate::multicut::WdmcInstance;
use crate::permcsp::{OrderedDomain, PermCspInstance, Value};

/// Host vertex label; JSON numbers are accepted and kept as their decimal text.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Label(pub String);

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Text(String),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Num(n) => Label(n.to_string()),
            Raw::Text(s) => Label(s),
        })
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_string())
    }
}

/// Pattern graph H on the part keys, host graph G on the labels in `parts`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiInstance {
    pub pattern_edges: Vec<(u64, u64)>,
    pub parts: BTreeMap<u64, Vec<Label>>,
    pub host_edges: Vec<(Label, Label)>,
}

/// Pattern vertex -> 1-based index into its (padded) part.
pub type Homomorphism = BTreeMap<u64, usize>;

/// Validated PSI data: pattern vertices in increasing order, parts padded to size `n`.
#[derive(Clone, Debug)]
struct Psi {
    pattern: Vec<u64>,
    edges: Vec<(u64, u64)>,
    parts: BTreeMap<u64, Vec<Option<Label>>>,
    host: BTreeSet<(Label, Label)>,
    n: usize,
}

impl Psi {
    fn new(psi: &PsiInstance) -> Result<Psi> {
        let pattern: Vec<u64> = psi.parts.keys().copied().collect();
        let mut edges = BTreeSet::new();
        for &(i, j) in &psi.pattern_edges {
            if i == j || !psi.parts.contains_key(&i) || !psi.parts.contains_key(&j) {
                return input(format!("pattern edge ({i}, {j}) is a loop or names a missing part"));
            }
            edges.insert((i.min(j), i.max(j)));
        }
        let touched: BTreeSet<u64> = edges.iter().flat_map(|&(i, j)| [i, j]).collect();
        if touched.len() != pattern.len() {
            return input("pattern graph has an isolated vertex");
        }
        let mut owner = BTreeMap::new();
        for (&i, part) in &psi.parts {
            for v in part {
                if owner.insert(v.clone(), i).is_some() {
                    return input(format!("host vertex {} appears twice", v.0));
                }
            }
        }
        let mut host = BTreeSet::new();
        for (u, v) in &psi.host_edges {
            if !owner.contains_key(u) || !owner.contains_key(v) {
                return input("host edge names a vertex outside every part");
            }
            host.insert((u.clone(), v.clone()));
            host.insert((v.clone(), u.clone()));
        }
        let n = psi.parts.values().map(Vec::len).max().unwrap_or(0);
        if n == 0 {
            return input("parts are empty");
        }
        let parts = psi
            .parts
            .iter()
            .map(|(&i, p)| {
                let mut padded: Vec<Option<Label>> = p.iter().cloned().map(Some).collect();
                padded.resize(n, None);
                (i, padded)
            })
            .collect();
        Ok(Psi {
            pattern,
            edges: edges.into_iter().collect(),
            parts,
            host,
            n,
        })
    }

    /// Whether v^i_a and v^j_b are adjacent (1-based indices; padding is isolated).
    fn adjacent(&self, i: u64, a: usize, j: u64, b: usize) -> bool {
        match (&self.parts[&i][a - 1], &self.parts[&j][b - 1]) {
            (Some(u), Some(v)) => self.host.contains(&(u.clone(), v.clone())),
            _ => false,
        }
    }

    fn is_homomorphism(&self, phi: &Homomorphism) -> bool {
        self.pattern
            .iter()
            .all(|i| phi.get(i).is_some_and(|&a| (1..=self.n).contains(&a)))
            && phi.len() == self.pattern.len()
            && self.edges.iter().all(|&(i, j)| self.adjacent(i, phi[&i], j, phi[&j]))
    }
}

pub fn is_psi_homomorphism(psi: &PsiInstance, phi: &Homomorphism) -> Result<bool> {
    Ok(Psi::new(psi)?.is_homomorphism(phi))
}

const PSI_LIMIT: u128 = 10_000_000;

/// First valid homomorphism in lexicographic order of (phi(i)) over increasing i.
pub fn brute_force_psi(psi: &PsiInstance) -> Result<Option<Homomorphism>> {
    let p = Psi::new(psi)?;
    let size = (p.n as u128).checked_pow(p.pattern.len() as u32).unwrap_or(u128::MAX);
    if size > PSI_LIMIT {
        return Err(Error::Capacity {
            what: "psi assignments",
            size,
            limit: PSI_LIMIT,
        });
    }
    let h = p.pattern.len();
    let mut idx = vec![1usize; h];
    loop {
        let phi: Homomorphism = p.pattern.iter().copied().zip(idx.iter().copied()).collect();
        if p.is_homomorphism(&phi) {
            return Ok(Some(phi));
        }
        let mut c = h;
        loop {
            if c == 0 {
                return Ok(None);
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] <= p.n {
                break;
            }
            idx[c] = 1;
        }
    }
}

/// The reduced weighted instance with the parameters of the construction.
#[derive(Clone, Debug)]
pub struct PsiReduction {
    pub wdmc: WdmcInstance,
    pub n: usize,
    /// Number of pattern edges.
    pub k: usize,
    /// Number of pattern vertices.
    pub h: usize,
    pub m: u64,
    pub w: u64,
    pub k_prime: usize,
    psi: Psi,
}

fn z(i: u64, a: usize) -> String {
    format!("z.{i}.{a}")
}
fn zh(i: u64, a: usize) -> String {
    format!("zh.{i}.{a}")
}
fn path_vertex(role: &str, i: u64, j: u64, a: usize) -> String {
    format!("{role}.{i}.{j}.{a}")
}
fn grid(i: u64, j: u64, a: usize, b: usize) -> String {
    format!("p.{i}.{j}.{a}.{b}")
}

pub fn psi_to_wdmc(psi: &PsiInstance) -> Result<PsiReduction> {
    let p = Psi::new(psi)?;
    let (n, k, h) = (p.n, p.edges.len(), p.pattern.len());
    let m = k as u64 + 1;
    let w = m * (2 * k as u64 * (n as u64 + 1) + h as u64) + k as u64;
    let heavy = w + 1;
    let mut g = Digraph::new();
    // vertices without a weight are undeletable
    let add = |g: &mut Digraph, name: String, weight: Option<u64>| -> Result<VertexId> {
        let v = g.add_vertex(name, weight.is_some())?;
        g.set_weight(v, weight.unwrap_or(heavy));
        Ok(v)
    };
    let s1 = add(&mut g, "s1".into(), None)?;
    let t1 = add(&mut g, "t1".into(), None)?;
    let s2 = add(&mut g, "s2".into(), None)?;
    let t2 = add(&mut g, "t2".into(), None)?;
    let arc = |g: &mut Digraph, u: &str, v: &str| -> Result<()> {
        let (u, v) = (g.require(u)?, g.require(v)?);
        g.add_arc(u, v).map(|_| ())
    };
    // a path (v_n, v^_n, v_{n-1}, ..., v^_1, v_0) directed towards v_0
    let chain = |g: &mut Digraph,
                 plain: &dyn Fn(usize) -> String,
                 hat: &dyn Fn(usize) -> String,
                 wt: &dyn Fn(usize) -> u64|
     -> Result<()> {
        for a in (0..=n).rev() {
            add(g, plain(a), None)?;
            if a > 0 {
                add(g, hat(a), Some(wt(a)))?;
            }
        }
        for a in (1..=n).rev() {
            arc(g, &plain(a), &hat(a))?;
            arc(g, &hat(a), &plain(a - 1))?;
        }
        Ok(())
    };
    for &i in &p.pattern {
        chain(&mut g, &|a| z(i, a), &|a| zh(i, a), &|_| m)?;
    }
    let mut ordered: Vec<(u64, u64)> = Vec::new();
    for &(i, j) in &p.edges {
        ordered.push((i, j));
        ordered.push((j, i));
    }
    for &(i, j) in &ordered {
        chain(
            &mut g,
            &|a| path_vertex("x", i, j, a),
            &|a| path_vertex("xh", i, j, a),
            &|a| m * a as u64,
        )?;
        chain(
            &mut g,
            &|a| path_vertex("y", i, j, a),
            &|a| path_vertex("yh", i, j, a),
            &|a| m * (n as u64 + 1 - a as u64),
        )?;
        for a in 0..=n {
            arc(&mut g, &path_vertex("x", i, j, a), &z(i, a))?;
            arc(&mut g, &z(i, a), &path_vertex("y", i, j, a))?;
        }
        let (s, t) = if i < j { ("s1", "t1") } else { ("s2", "t2") };
        arc(&mut g, s, &path_vertex("x", i, j, n))?;
        arc(&mut g, &path_vertex("x", i, j, 0), t)?;
        arc(&mut g, s, &path_vertex("y", i, j, n))?;
        arc(&mut g, &path_vertex("y", i, j, 0), t)?;
    }
    for &(i, j) in &p.edges {
        for a in 1..=n {
            for b in 1..=n {
                let wt = if p.adjacent(i, a, j, b) { 1 } else { w };
                add(&mut g, grid(i, j, a, b), Some(wt))?;
            }
        }
        for a in 1..=n {
            for b in 1..=n {
                if a < n {
                    arc(&mut g, &grid(i, j, a, b), &grid(i, j, a + 1, b))?;
                }
                if b < n {
                    arc(&mut g, &grid(i, j, a, b), &grid(i, j, a, b + 1))?;
                }
            }
        }
        for a in 1..=n {
            arc(&mut g, &path_vertex("x", i, j, a), &grid(i, j, a, 1))?;
            arc(&mut g, &grid(i, j, a, n), &path_vertex("y", i, j, a - 1))?;
            arc(&mut g, &path_vertex("x", j, i, a), &grid(i, j, 1, a))?;
            arc(&mut g, &grid(i, j, n, a), &path_vertex("y", j, i, a - 1))?;
        }
    }
    let k_prime = 5 * k + h;
    let wdmc = WdmcInstance::new(g, [(s1, t1), (s2, t2)], k_prime, w)?;
    Ok(PsiReduction {
        wdmc,
        n,
        k,
        h,
        m,
        w,
        k_prime,
        psi: p,
    })
}

impl PsiReduction {
    fn vertex(&self, name: &str) -> VertexId {
        self.wdmc.g.require(name).expect("constructed vertex")
    }

    /// The forward-direction solution: one hat vertex per path at phi's index and the
    /// grid vertex at (phi(i), phi(j)) for each pattern edge.
    pub fn map_solution(&self, phi: &Homomorphism) -> Result<VertexSet> {
        if !self.psi.is_homomorphism(phi) {
            return input("not a valid partitioned homomorphism");
        }
        let mut s = VertexSet::new();
        for &i in &self.psi.pattern {
            s.insert(self.vertex(&zh(i, phi[&i])));
        }
        for &(i, j) in &self.psi.edges {
            for (a, b) in [(i, j), (j, i)] {
                s.insert(self.vertex(&path_vertex("xh", a, b, phi[&a])));
                s.insert(self.vertex(&path_vertex("yh", a, b, phi[&a])));
            }
            s.insert(self.vertex(&grid(i, j, phi[&i], phi[&j])));
        }
        Ok(s)
    }

    /// Reads phi back from a solution: every Z-, X- and Y-path must hold exactly one
    /// solution vertex, all at the same index per pattern vertex.
    pub fn extract_solution(&self, s: &VertexSet) -> Result<Homomorphism> {
        let hit = |f: &dyn Fn(usize) -> String| -> Result<usize> {
            let idx: Vec<usize> = (1..=self.n).filter(|&a| s.contains(&self.vertex(&f(a)))).collect();
            match idx.as_slice() {
                [a] => Ok(*a),
                _ => Err(Error::Precondition(format!(
                    "solution meets path of {} in {} vertices",
                    f(1),
                    idx.len()
                ))),
            }
        };
        let mut phi = Homomorphism::new();
        for &i in &self.psi.pattern {
            phi.insert(i, hit(&|a| zh(i, a))?);
        }
        for &(i, j) in &self.psi.edges {
            for (a, b) in [(i, j), (j, i)] {
                for role in ["xh", "yh"] {
                    if hit(&|x| path_vertex(role, a, b, x))? != phi[&a] {
                        return Err(Error::Precondition(format!("{role}.{a}.{b} disagrees with the Z-path")));
                    }
                }
            }
        }
        if !self.psi.is_homomorphism(&phi) {
            return Err(Error::Precondition("extracted map is not a homomorphism".into()));
        }
        Ok(phi)
    }
}

/// ((part, index), (part, index)).
pub type CliqueEdge = ((usize, usize), (usize, usize));

/// k independent parts of size n; vertex (i, a) is v_{i,a}, both 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueInstance {
    pub k: usize,
    pub n: usize,
    pub edges: Vec<CliqueEdge>,
}

impl CliqueInstance {
    fn edge_set(&self) -> Result<BTreeSet<CliqueEdge>> {
        let mut set = BTreeSet::new();
        for &(u, v) in &self.edges {
            if u.0 >= self.k || v.0 >= self.k || u.1 >= self.n || v.1 >= self.n {
                return input("clique edge outside the parts");
            }
            if u.0 == v.0 {
                return input("parts must be independent sets");
            }
            set.insert((u, v));
            set.insert((v, u));
        }
        Ok(set)
    }
}

/// Chosen index per part.
pub type CliqueSelection = Vec<usize>;

pub fn is_clique_selection(cl: &CliqueInstance, pick: &[usize]) -> Result<bool> {
    let e = cl.edge_set()?;
    Ok(pick.len() == cl.k
        && pick.iter().all(|&a| a < cl.n)
        && (0..cl.k).all(|i| (i + 1..cl.k).all(|j| e.contains(&((i, pick[i]), (j, pick[j]))))))
}

pub fn brute_force_clique(cl: &CliqueInstance) -> Result<Option<CliqueSelection>> {
    cl.edge_set()?;
    let size = (cl.n as u128).checked_pow(cl.k as u32).unwrap_or(u128::MAX);
    if size > PSI_LIMIT {
        return Err(Error::Capacity {
            what: "clique selections",
            size,
            limit: PSI_LIMIT,
        });
    }
    if cl.n == 0 {
        return Ok(None);
    }
    let mut pick = vec![0usize; cl.k];
    loop {
        if is_clique_selection(cl, &pick)? {
            return Ok(Some(pick));
        }
        let mut c = cl.k;
        loop {
            if c == 0 {
                return Ok(None);
            }
            c -= 1;
            pick[c] += 1;
            if pick[c] < cl.n {
                break;
            }
            pick[c] = 0;
        }
    }
}

/// Variable layout of the clique encoding.
#[derive(Clone, Debug)]
pub struct CliqueCsp {
    pub csp: PermCspInstance,
    /// x_i, its reverse-ordered copy.
    pub x: Vec<(usize, usize)>,
    /// y_{i,j} for i != j, its reverse-ordered copy.
    pub y: BTreeMap<(usize, usize), (usize, usize)>,
}

impl CliqueCsp {
    pub fn selection(&self, valuation: &[Value]) -> CliqueSelection {
        self.x.iter().map(|&(v, _)| valuation[v] as usize).collect()
    }
}

/// x_i ranges over [n], y_{i,j} over [n] x [n] in lexicographic order (value a*n + b).
/// Each implication y_{i,j} = (a, b) => x_i = a is split into its two clause families;
/// each family is downclosed once one side is read in reverse order, so reversed copies
/// tied by identity constraints carry them. y_{j,i} = swap(y_{i,j}) is kept only on
/// edges.
pub fn clique_to_permcsp(cl: &CliqueInstance) -> Result<CliqueCsp> {
    let edges = cl.edge_set()?;
    let n = cl.n;
    let mut csp = PermCspInstance::new(Vec::new());
    let pair = |csp: &mut PermCspInstance, name: String, values: Vec<Value>| -> Result<(usize, usize)> {
        let f = csp.domains.len();
        csp.domains.push(OrderedDomain::new(values.clone())?);
        csp.names.push(name.clone());
        csp.domains
            .push(OrderedDomain::new(values.iter().rev().copied().collect())?);
        csp.names.push(format!("{name}'"));
        let id: Vec<(Value, Value)> = values.iter().map(|&v| (v, v)).collect();
        csp.add_permutation(f, f + 1, &id)?;
        Ok((f, f + 1))
    };
    let xs: Vec<Value> = (0..n as Value).collect();
    let ys: Vec<Value> = (0..(n * n) as Value).collect();
    let mut x = Vec::new();
    for i in 0..cl.k {
        x.push(pair(&mut csp, format!("x{}", i + 1), xs.clone())?);
    }
    let mut y = BTreeMap::new();
    for i in 0..cl.k {
        for j in 0..cl.k {
            if i != j {
                y.insert((i, j), pair(&mut csp, format!("y{}.{}", i + 1, j + 1), ys.clone())?);
            }
        }
    }
    let first = |v: Value| v / n as Value;
    for (&(i, _), &(yv, yr)) in &y {
        let (xv, xr) = x[i];
        // (x_i <= a) or (y >= (a + 1, 0)) for 0 <= a < n - 1
        let upper: Vec<(Value, Value)> = xs
            .iter()
            .flat_map(|&xa| ys.iter().map(move |&yb| (xa, yb)))
            .filter(|&(xa, yb)| (0..n.saturating_sub(1) as Value).all(|a| xa <= a || yb >= (a + 1) * n as Value))
            .collect();
        csp.add_downclosed(xv, yr, &upper)?;
        // (y <= (a - 1, n - 1)) or (x_i >= a) for 0 < a < n
        let lower: Vec<(Value, Value)> = ys
            .iter()
            .flat_map(|&yb| xs.iter().map(move |&xa| (yb, xa)))
            .filter(|&(yb, xa)| (1..n as Value).all(|a| yb < a * n as Value || xa >= a))
            .collect();
        csp.add_downclosed(yv, xr, &lower)?;
        debug_assert!(upper.iter().all(|&(xa, yb)| xa <= first(yb)));
    }
    for i in 0..cl.k {
        for j in i + 1..cl.k {
            let pairs: Vec<(Value, Value)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| edges.contains(&((i, a), (j, b))))
                .map(|(a, b)| ((a * n + b) as Value, (b * n + a) as Value))
                .collect();
            csp.add_permutation(y[&(i, j)].0, y[&(j, i)].0, &pairs)?;
        }
    }
    Ok(CliqueCsp { csp, x, y })
}

/// Matrix of (a, b) -> (b, a) over the lexicographic order of [n] x [n].
pub fn swap_matrix(n: usize) -> Result<ZeroOneMatrix> {
    let dom: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let pi: Vec<((usize, usize), (usize, usize))> = dom.iter().map(|&(a, b)| ((a, b), (b, a))).collect();
    adj_of_permutation(&pi, &dom, &dom)
}
