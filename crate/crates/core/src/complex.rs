//! Finite abstract simplicial complexes given by their facets.
//!
//! Simplices are strictly increasing vertex lists. Bases of chain groups are
//! always the lexicographically sorted list of faces of the given dimension,
//! and the boundary of `[v_0, ..., v_k]` is `sum_i (-1)^i [v_0, ..., ^v_i, ..., v_k]`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::snf::SparseMatrix;

pub type Simplex = Vec<usize>;

/// A finite simplicial complex stored as its list of maximal simplices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Simplex>,
}

/// On-disk JSON layout: `{"vertices": n, "facets": [[v, ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl SimplicialComplex {
    /// Build from a facet list; the vertex count is one more than the largest label.
    pub fn from_facets<I, S>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let facets: Vec<Vec<usize>> = facets.into_iter().map(|f| f.as_ref().to_vec()).collect();
        let vertex_count = facets.iter().flat_map(|f| f.iter().copied()).max().map_or(0, |v| v + 1);
        Self::new(vertex_count, facets)
    }

    /// Build with an explicit vertex count (isolated trailing vertices are
    /// not part of the complex unless listed as facets).
    pub fn new(vertex_count: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut canonical = BTreeSet::new();
        for facet in facets {
            if facet.is_empty() {
                return Err(Error::EmptySimplex);
            }
            let mut sorted = facet.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::MalformedSimplex { simplex: facet, vertex: w[0] });
            }
            if let Some(&v) = sorted.last().filter(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange { vertex: v, vertex_count });
            }
            canonical.insert(sorted);
        }
        Ok(Self { vertex_count, facets: drop_non_maximal(canonical) })
    }

    pub fn from_file(file: &ComplexFile) -> Result<Self> {
        Self::new(file.vertices, file.facets.clone())
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile { vertices: self.vertex_count, facets: self.facets.clone(), provenance: None }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Maximal facet dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// All `k`-faces of the closure, sorted lexicographically.
    pub fn faces(&self, k: usize) -> Vec<Simplex> {
        let mut out = BTreeSet::new();
        for facet in &self.facets {
            if facet.len() > k {
                for_each_subset(facet, k + 1, |s| {
                    out.insert(s.to_vec());
                });
            }
        }
        out.into_iter().collect()
    }

    /// `s_k` for `k = 0..=dim`.
    pub fn face_counts(&self) -> Vec<usize> {
        match self.dim() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.faces(k).len()).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts().iter().enumerate().map(|(k, &s)| if k % 2 == 0 { s as i64 } else { -(s as i64) }).sum()
    }

    /// The simplicial boundary map from `k`-chains to `(k-1)`-chains.
    pub fn boundary_matrix(&self, k: usize) -> Result<BoundaryMatrix> {
        let dim = self.dim().unwrap_or(0);
        if k == 0 || self.is_empty() || k > dim {
            return Err(Error::DegreeOutOfRange { k, dim });
        }
        let rows = self.faces(k - 1);
        let cols = self.faces(k);
        Ok(BoundaryMatrix::build(rows, cols))
    }

    /// Pure, every ridge in exactly two facets, facet graph connected.
    pub fn pseudomanifold_report(&self) -> PseudomanifoldReport {
        let Some(dim) = self.dim() else {
            return PseudomanifoldReport {
                is_pseudomanifold: false,
                pure: false,
                bad_ridges: Vec::new(),
                components: 0,
            };
        };
        let pure = self.facets.iter().all(|f| f.len() == dim + 1);
        let ridges = self.ridge_incidence();
        let bad_ridges: Vec<(Simplex, usize)> =
            ridges.iter().filter(|(_, inc)| inc.len() != 2).map(|(r, inc)| (r.clone(), inc.len())).collect();
        let components = facet_components(self.facets.len(), &ridges);
        PseudomanifoldReport {
            is_pseudomanifold: pure && bad_ridges.is_empty() && components == 1,
            pure,
            bad_ridges,
            components,
        }
    }

    pub fn is_pseudomanifold(&self) -> bool {
        self.pseudomanifold_report().is_pseudomanifold
    }

    /// Propagate facet signs across ridges by breadth-first search.
    ///
    /// A facet with sign `s` induces `s * (-1)^i` on the ridge obtained by
    /// deleting its `i`-th vertex; the two facets on a ridge must induce
    /// opposite signs.
    pub fn orient(&self) -> Result<Orientation> {
        let report = self.pseudomanifold_report();
        if !report.is_pseudomanifold {
            return Err(Error::NotPseudomanifold(report.summary()));
        }
        let ridges = self.ridge_incidence();
        let mut neighbours: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.facets.len()];
        for inc in ridges.values() {
            let [(f, i), (g, j)] = [inc[0], inc[1]];
            // Consistency requires sign(g) = -sign(f) * (-1)^(i + j).
            let relation = if (i + j) % 2 == 0 { -1 } else { 1 };
            neighbours[f].push((g, relation));
            neighbours[g].push((f, relation));
        }
        let mut signs = vec![0i8; self.facets.len()];
        let mut parent = vec![usize::MAX; self.facets.len()];
        let mut queue = VecDeque::from([0usize]);
        signs[0] = 1;
        while let Some(f) = queue.pop_front() {
            for &(g, relation) in &neighbours[f] {
                let wanted = signs[f] * relation;
                if signs[g] == 0 {
                    signs[g] = wanted;
                    parent[g] = f;
                    queue.push_back(g);
                } else if signs[g] != wanted {
                    return Ok(Orientation::NonOrientable { cycle: tree_cycle(&parent, f, g) });
                }
            }
        }
        Ok(Orientation::Orientable { signs })
    }

    /// Two-dimensional admissibility: pure, every edge in exactly two
    /// triangles and every vertex link a single cycle.
    pub fn is_admissible_dim2(&self) -> Result<bool> {
        let dim = self.dim().unwrap_or(0);
        if dim != 2 {
            return Err(Error::WrongDimension { expected: 2, actual: dim });
        }
        let report = self.pseudomanifold_report();
        if !report.pure || !report.bad_ridges.is_empty() {
            return Ok(false);
        }
        let mut links: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for t in &self.facets {
            links.entry(t[0]).or_default().push((t[1], t[2]));
            links.entry(t[1]).or_default().push((t[0], t[2]));
            links.entry(t[2]).or_default().push((t[0], t[1]));
        }
        Ok(links.values().all(|edges| is_single_cycle(edges)))
    }

    /// Connected sum of two oriented pseudomanifolds of equal dimension.
    ///
    /// The lexicographically first facet of each summand is removed and the two
    /// boundary spheres are identified by matching vertices in sorted order,
    /// swapping the first two if needed so the gluing reverses orientation.
    pub fn connected_sum(&self, other: &Self) -> Result<Self> {
        let (dx, dy) = self.check_sum_dims(other)?;
        let sx = self.orient()?.signs().ok_or(Error::NonOrientable)?.to_vec();
        let sy = other.orient()?.signs().ok_or(Error::NonOrientable)?.to_vec();
        debug_assert_eq!(dx, dy);
        let reverse = sx[0] == sy[0];
        Ok(self.glue(other, reverse))
    }

    /// Connected sum where at least one summand is non-orientable, so the
    /// gluing orientation does not affect the homeomorphism type.
    pub fn connected_sum_nonorientable(&self, other: &Self) -> Result<Self> {
        self.check_sum_dims(other)?;
        let x_orientable = self.orient()?.is_orientable();
        let y_orientable = other.orient()?.is_orientable();
        if x_orientable && y_orientable {
            return Err(Error::Domain("both summands are orientable; use connected_sum".into()));
        }
        Ok(self.glue(other, false))
    }

    fn check_sum_dims(&self, other: &Self) -> Result<(usize, usize)> {
        let dx = self.dim().ok_or_else(|| Error::NotPseudomanifold("empty complex".into()))?;
        let dy = other.dim().ok_or_else(|| Error::NotPseudomanifold("empty complex".into()))?;
        if dx != dy {
            return Err(Error::DimensionMismatch { left: dx, right: dy });
        }
        if dx == 0 {
            return Err(Error::Domain("connected sum needs dimension >= 1".into()));
        }
        Ok((dx, dy))
    }

    fn glue(&self, other: &Self, swap_first_two: bool) -> Self {
        let removed_x = &self.facets[0];
        let removed_y = &other.facets[0];
        let mut target: Vec<usize> = removed_x.clone();
        if swap_first_two {
            target.swap(0, 1);
        }
        let mut relabel: HashMap<usize, usize> = removed_y.iter().copied().zip(target.iter().copied()).collect();
        let mut next = self.vertex_count;
        let used_y: BTreeSet<usize> = other.facets.iter().flatten().copied().collect();
        for v in used_y {
            relabel.entry(v).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
        let mut facets: Vec<Simplex> = self.facets[1..].to_vec();
        facets.extend(other.facets[1..].iter().map(|f| f.iter().map(|v| relabel[v]).collect::<Vec<_>>()));
        Self::new(next, facets).expect("connected sum of valid complexes is valid")
    }

    /// Map each ridge to the facets containing it, with the index of the
    /// deleted vertex.
    fn ridge_incidence(&self) -> BTreeMap<Simplex, Vec<(usize, usize)>> {
        let mut ridges: BTreeMap<Simplex, Vec<(usize, usize)>> = BTreeMap::new();
        for (fi, facet) in self.facets.iter().enumerate() {
            if facet.len() < 2 {
                continue;
            }
            for i in 0..facet.len() {
                let mut ridge = facet.clone();
                ridge.remove(i);
                ridges.entry(ridge).or_default().push((fi, i));
            }
        }
        ridges
    }
}

/// Outcome of [`SimplicialComplex::is_pseudomanifold`] with diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    pub is_pseudomanifold: bool,
    pub pure: bool,
    /// Ridges not contained in exactly two facets, with their facet count.
    pub bad_ridges: Vec<(Simplex, usize)>,
    /// Connected components of the facet adjacency graph.
    pub components: usize,
}

impl PseudomanifoldReport {
    pub fn summary(&self) -> String {
        if self.is_pseudomanifold {
            return "pseudomanifold".into();
        }
        let mut parts = Vec::new();
        if !self.pure {
            parts.push("not dimension-homogeneous".to_string());
        }
        if !self.bad_ridges.is_empty() {
            parts.push(format!("{} ridges not in exactly two facets", self.bad_ridges.len()));
        }
        if self.components != 1 {
            parts.push(format!("{} strongly connected components", self.components));
        }
        parts.join(", ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Orientation {
    /// One sign per facet, in facet order.
    Orientable { signs: Vec<i8> },
    /// A closed walk of facets along which sign propagation is inconsistent.
    NonOrientable { cycle: Vec<usize> },
}

impl Orientation {
    pub fn is_orientable(&self) -> bool {
        matches!(self, Orientation::Orientable { .. })
    }

    pub fn signs(&self) -> Option<&[i8]> {
        match self {
            Orientation::Orientable { signs } => Some(signs),
            Orientation::NonOrientable { .. } => None,
        }
    }
}

/// Check that `signs` orient `complex`: on every ridge the two facets induce
/// opposite signs.
pub fn is_valid_orientation(complex: &SimplicialComplex, signs: &[i8]) -> bool {
    if signs.len() != complex.facets.len() {
        return false;
    }
    complex.ridge_incidence().values().all(|inc| {
        inc.len() == 2 && {
            let induced = |(f, i): (usize, usize)| signs[f] * if i % 2 == 0 { 1 } else { -1 };
            induced(inc[0]) == -induced(inc[1])
        }
    })
}

/// Sparse `{-1, 0, 1}` boundary matrix with its row and column bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
    /// Column-major: for each column, `(row, entry)` pairs sorted by row.
    pub columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    fn build(rows: Vec<Simplex>, cols: Vec<Simplex>) -> Self {
        let index: HashMap<&[usize], usize> = rows.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
        let columns = cols
            .iter()
            .map(|simplex| {
                let mut entries: Vec<(usize, i8)> = (0..simplex.len())
                    .map(|i| {
                        let mut face = simplex.clone();
                        face.remove(i);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (index[face.as_slice()], sign)
                    })
                    .collect();
                entries.sort_unstable();
                entries
            })
            .collect();
        Self { rows, cols, columns }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols.len()
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let triplets =
            self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, i64::from(v))));
        SparseMatrix::from_triplets(self.rows.len(), self.cols.len(), triplets)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = vec![vec![0i64; self.cols.len()]; self.rows.len()];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                dense[r][c] = i64::from(v);
            }
        }
        dense
    }
}

/// Dense product `first * then`, e.g. `d_{k-1} d_k`.
pub fn compose(first: &BoundaryMatrix, then: &BoundaryMatrix) -> Vec<Vec<i64>> {
    let a = first.to_dense();
    let b = then.to_dense();
    let inner = b.len();
    let mut out = vec![vec![0i64; b.first().map_or(0, Vec::len)]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            if row[k] != 0 {
                for (j, v) in b[k].iter().enumerate() {
                    out[i][j] += row[k] * v;
                }
            }
        }
    }
    out
}

fn drop_non_maximal(simplices: BTreeSet<Simplex>) -> Vec<Simplex> {
    let mut by_size: Vec<Simplex> = simplices.into_iter().collect();
    by_size.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut by_vertex: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut kept: Vec<Simplex> = Vec::new();
    for s in by_size {
        let contained = by_vertex
            .get(&s[0])
            .is_some_and(|cands| cands.iter().any(|&k| kept[k].len() > s.len() && is_subset(&s, &kept[k])));
        if !contained {
            for &v in &s {
                by_vertex.entry(v).or_default().push(kept.len());
            }
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

fn for_each_subset(set: &[usize], size: usize, mut f: impl FnMut(&[usize])) {
    let n = set.len();
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut buf = vec![0usize; size];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = set[i];
        }
        f(&buf);
        let Some(pos) = (0..size).rev().find(|&p| idx[p] != p + n - size) else {
            return;
        };
        idx[pos] += 1;
        for p in pos + 1..size {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

fn facet_components(count: usize, ridges: &BTreeMap<Simplex, Vec<(usize, usize)>>) -> usize {
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for inc in ridges.values() {
        for w in inc.windows(2) {
            let (a, b) = (find(&mut parent, w[0].0), find(&mut parent, w[1].0));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..count).filter(|&x| find(&mut parent, x) == x).count()
}

fn tree_cycle(parent: &[usize], f: usize, g: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pf = path(f);
    let pg = path(g);
    let on_g: BTreeSet<usize> = pg.iter().copied().collect();
    let meet_idx = pf.iter().position(|x| on_g.contains(x)).expect("common root");
    let meet = pf[meet_idx];
    let mut cycle: Vec<usize> = pf[..=meet_idx].to_vec();
    let g_idx = pg.iter().position(|&x| x == meet).expect("meet on g path");
    cycle.extend(pg[..g_idx].iter().rev());
    cycle
}

fn is_single_cycle(edges: &[(usize, usize)]) -> bool {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.len() < 3 || adj.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = *adj.keys().next().expect("nonempty");
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn tetra_boundary() -> SimplicialComplex {
        corpus::complex("tetra_boundary").unwrap()
    }

    #[test]
    fn single_triangle_closure() {
        let x = SimplicialComplex::from_facets([[0, 1, 2]]).unwrap();
        assert_eq!(x.face_counts(), vec![3, 3, 1]);
        assert_eq!(x.dim(), Some(2));
    }

    #[test]
    fn empty_complex_has_no_dimension() {
        let x = SimplicialComplex::from_facets(Vec::<Vec<usize>>::new()).unwrap();
        assert!(x.is_empty());
        assert_eq!(x.dim(), None);
        assert!(x.face_counts().is_empty());
    }

    #[test]
    fn repeated_vertex_is_malformed() {
        let err = SimplicialComplex::from_facets([[0, 1, 1]]).unwrap_err();
        assert!(matches!(err, Error::MalformedSimplex { vertex: 1, .. }));
    }

    #[test]
    fn duplicates_and_subfaces_are_dropped() {
        let x = SimplicialComplex::from_facets(vec![vec![2, 1, 0], vec![0, 1, 2], vec![0, 2]]).unwrap();
        assert_eq!(x.facets(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn vertex_range_checked() {
        let err = SimplicialComplex::new(2, vec![vec![0, 2]]).unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { vertex: 2, .. }));
    }

    #[test]
    fn face_counts_of_small_complexes() {
        assert_eq!(tetra_boundary().face_counts(), vec![4, 6, 4]);
        let edge = SimplicialComplex::from_facets([[0, 1]]).unwrap();
        assert_eq!(edge.face_counts(), vec![2, 1]);
    }

    #[test]
    fn triangle_boundary_column() {
        let x = SimplicialComplex::from_facets([[0, 1, 2]]).unwrap();
        let d = x.boundary_matrix(2).unwrap();
        assert_eq!(d.rows, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(d.columns[0], vec![(0, 1), (1, -1), (2, 1)]);
    }

    #[test]
    fn boundary_degree_range() {
        let x = tetra_boundary();
        assert!(x.boundary_matrix(0).is_err());
        assert!(x.boundary_matrix(3).is_err());
    }

    #[test]
    fn tetra_boundary_rows_have_two_entries() {
        let d = tetra_boundary().boundary_matrix(2).unwrap();
        assert_eq!((d.row_count(), d.col_count()), (6, 4));
        for row in d.to_dense() {
            assert_eq!(row.iter().filter(|&&v| v != 0).count(), 2);
        }
    }

    #[test]
    fn boundary_squares_to_zero_on_corpus() {
        for entry in corpus::complexes() {
            let x = entry.complex;
            let dim = x.dim().unwrap();
            for k in 2..=dim {
                let lower = x.boundary_matrix(k - 1).unwrap();
                let upper = x.boundary_matrix(k).unwrap();
                assert!(compose(&lower, &upper).iter().flatten().all(|&v| v == 0), "{}", entry.name);
            }
        }
    }

    #[test]
    fn pseudomanifold_predicates() {
        assert!(tetra_boundary().is_pseudomanifold());
        let two = SimplicialComplex::from_facets([[0, 1, 2], [1, 2, 3]]).unwrap();
        let report = two.pseudomanifold_report();
        assert!(!report.is_pseudomanifold);
        assert_eq!(report.bad_ridges.len(), 4);
        assert!(!corpus::complex("mobius").unwrap().is_pseudomanifold());
    }

    #[test]
    fn impure_complex_is_not_pseudomanifold() {
        let x = SimplicialComplex::from_facets(vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert!(!x.pseudomanifold_report().pure);
    }

    #[test]
    fn orientation_of_sphere_and_its_negation() {
        let x = tetra_boundary();
        let signs = x.orient().unwrap().signs().unwrap().to_vec();
        assert!(is_valid_orientation(&x, &signs));
        let flipped: Vec<i8> = signs.iter().map(|s| -s).collect();
        assert!(is_valid_orientation(&x, &flipped));
    }

    #[test]
    fn non_orientable_certificate_is_a_closed_walk() {
        let x = corpus::complex("rp2_min").unwrap();
        let Orientation::NonOrientable { cycle } = x.orient().unwrap() else {
            panic!("RP2 is non-orientable");
        };
        assert!(cycle.len() >= 3);
        let ridges = x.ridge_incidence();
        let adjacent = |a: usize, b: usize| {
            ridges
                .values()
                .any(|inc| inc.len() == 2 && ((inc[0].0 == a && inc[1].0 == b) || (inc[0].0 == b && inc[1].0 == a)))
        };
        for i in 0..cycle.len() {
            assert!(adjacent(cycle[i], cycle[(i + 1) % cycle.len()]));
        }
    }

    #[test]
    fn orient_refuses_non_pseudomanifold() {
        assert!(corpus::complex("mobius").unwrap().orient().is_err());
    }

    #[test]
    fn admissibility_in_dimension_two() {
        assert!(tetra_boundary().is_admissible_dim2().unwrap());
        assert!(corpus::complex("rp2_min").unwrap().is_admissible_dim2().unwrap());
        // Two tetrahedron boundaries sharing vertex 0.
        let pinched = SimplicialComplex::from_facets([
            [0, 1, 2],
            [0, 1, 3],
            [0, 2, 3],
            [1, 2, 3],
            [0, 4, 5],
            [0, 4, 6],
            [0, 5, 6],
            [4, 5, 6],
        ])
        .unwrap();
        assert!(!pinched.is_admissible_dim2().unwrap());
        let edge = SimplicialComplex::from_facets([[0, 1]]).unwrap();
        assert!(matches!(edge.is_admissible_dim2(), Err(Error::WrongDimension { .. })));
    }

    #[test]
    fn connected_sum_facet_identity_and_orientability() {
        let s = tetra_boundary();
        let t = corpus::complex("torus_7").unwrap();
        for (x, y) in [(&s, &s), (&t, &t), (&t, &s)] {
            let sum = x.connected_sum(y).unwrap();
            assert!(sum.is_pseudomanifold());
            assert!(sum.orient().unwrap().is_orientable());
            assert_eq!(sum.facets().len(), x.facets().len() + y.facets().len() - 2);
        }
    }

    #[test]
    fn connected_sum_errors() {
        let s = tetra_boundary();
        let rp2 = corpus::complex("rp2_min").unwrap();
        let s3 = corpus::complex("sphere_3").unwrap();
        assert!(matches!(s.connected_sum(&s3), Err(Error::DimensionMismatch { .. })));
        assert_eq!(s.connected_sum(&rp2), Err(Error::NonOrientable));
        assert!(s.connected_sum_nonorientable(&s).is_err());
        assert!(rp2.connected_sum_nonorientable(&rp2).unwrap().is_pseudomanifold());
    }

    #[test]
    fn subsets_enumerated_in_lex_order() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 4, 7, 9], 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![[1, 4], [1, 7], [1, 9], [4, 7], [4, 9], [7, 9]]);
    }
}
