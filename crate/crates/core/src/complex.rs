//! Manifold presentations: oriented triangulations and direct chain
//! complexes, hypothesis validation, and the built-in manifolds.
//!
//! A 3-manifold enters the library either as a list of tetrahedra (with a
//! coherent orientation found automatically) or as a bare chain complex,
//! which is trusted to come from a closed oriented connected manifold.
//! Validation reports the standing hypotheses — closed, oriented,
//! connected — and everything downstream requires them.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::homology::{HomologyClass, HomologyError, HomologyGroup};
use crate::matrix::IntegerMatrix;
use crate::textio::{LineReader, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("presentation is empty")]
    Empty,
    #[error("malformed facet #{index}: repeated vertex in {facet:?}")]
    MalformedFacet { index: usize, facet: [usize; 4] },
    #[error("non-manifold face incidence: triangle {triangle:?} lies in {count} tetrahedra")]
    NonManifoldFace { triangle: [usize; 3], count: usize },
    #[error("boundary map {k} has {found} rows but map {} has {expected} columns", k - 1)]
    BoundaryShape {
        k: usize,
        expected: usize,
        found: usize,
    },
    #[error("manifold hypothesis violated: not closed (some face lies in one tetrahedron)")]
    NotClosed,
    #[error("manifold hypothesis violated: no coherent orientation exists")]
    NonOrientable,
    #[error("manifold hypothesis violated: presentation is not connected")]
    NotConnected,
    #[error("not a chain complex: boundary{k} * boundary{} is nonzero", k + 1)]
    NotAChainComplex { k: usize },
    #[error("invalid lens space parameters ({p},{q}): gcd must be 1")]
    BadLensParameters { p: u64, q: u64 },
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// How the manifold was handed to us.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldPresentation {
    /// Oriented tetrahedra given by vertex indices. Orientations of the
    /// individual facets need not be coherent; a global orientation is
    /// searched for.
    Triangulation3 { facets: Vec<[usize; 4]> },
    /// Boundary maps `d1 ... d_dim` of a chain complex of free
    /// `Z`-modules, trusted to present a closed oriented connected
    /// manifold.
    ChainComplexDirect { boundaries: Vec<IntegerMatrix> },
}

/// Outcome of hypothesis checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    pub closed: bool,
    pub oriented: bool,
    pub connected: bool,
    pub is_complex: bool,
}

impl ValidationReport {
    pub fn all_hypotheses(&self) -> bool {
        self.closed && self.oriented && self.connected && self.is_complex
    }
}

/// Check the manifold hypotheses without building anything else.
///
/// Structural defects (repeated vertices, faces in three or more
/// tetrahedra, mismatched boundary shapes) are errors naming the offending
/// simplex; failed hypotheses are reported, not raised.
pub fn validate(p: &ManifoldPresentation) -> Result<ValidationReport, ValidationError> {
    match p {
        ManifoldPresentation::Triangulation3 { facets } => {
            Ok(TriangulationData::analyze(facets)?.report)
        }
        ManifoldPresentation::ChainComplexDirect { boundaries } => {
            check_chain_shapes(boundaries)?;
            Ok(ValidationReport {
                closed: true,
                oriented: true,
                connected: true,
                is_complex: chain_products_vanish(boundaries),
            })
        }
    }
}

fn check_chain_shapes(boundaries: &[IntegerMatrix]) -> Result<(), ValidationError> {
    if boundaries.is_empty() {
        return Err(ValidationError::Empty);
    }
    for k in 1..boundaries.len() {
        let expected = boundaries[k - 1].cols();
        let found = boundaries[k].rows();
        if expected != found {
            return Err(ValidationError::BoundaryShape {
                k: k + 1,
                expected,
                found,
            });
        }
    }
    Ok(())
}

fn chain_products_vanish(boundaries: &[IntegerMatrix]) -> bool {
    boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
}

/// Incidence/orientation analysis of a facet list.
struct TriangulationData {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
    /// per-facet coherent orientation sign (meaningful when oriented)
    eps: Vec<i8>,
    report: ValidationReport,
}

fn sorted3(mut f: [usize; 3]) -> ([usize; 3], i8) {
    let mut parity = 1i8;
    // three-element bubble sort, tracking the permutation sign
    if f[0] > f[1] {
        f.swap(0, 1);
        parity = -parity;
    }
    if f[1] > f[2] {
        f.swap(1, 2);
        parity = -parity;
    }
    if f[0] > f[1] {
        f.swap(0, 1);
        parity = -parity;
    }
    (f, parity)
}

/// The four triangle faces of an ordered tetrahedron with their induced
/// orientation signs relative to the sorted triangle.
fn facet_faces(facet: &[usize; 4]) -> [([usize; 3], i8); 4] {
    std::array::from_fn(|omit| {
        let mut face = [0usize; 3];
        let mut w = 0;
        for (i, &v) in facet.iter().enumerate() {
            if i != omit {
                face[w] = v;
                w += 1;
            }
        }
        let base = if omit % 2 == 0 { 1 } else { -1 };
        let (sorted, parity) = sorted3(face);
        (sorted, base * parity)
    })
}

impl TriangulationData {
    fn analyze(facets: &[[usize; 4]]) -> Result<TriangulationData, ValidationError> {
        if facets.is_empty() {
            return Err(ValidationError::Empty);
        }
        for (index, facet) in facets.iter().enumerate() {
            let mut sorted = *facet;
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(ValidationError::MalformedFacet {
                    index,
                    facet: *facet,
                });
            }
        }

        let mut incidence: HashMap<[usize; 3], Vec<(usize, i8)>> = HashMap::new();
        for (fi, facet) in facets.iter().enumerate() {
            for (tri, sign) in facet_faces(facet) {
                incidence.entry(tri).or_default().push((fi, sign));
            }
        }
        if let Some((tri, inc)) = incidence.iter().find(|(_, v)| v.len() > 2) {
            return Err(ValidationError::NonManifoldFace {
                triangle: *tri,
                count: inc.len(),
            });
        }
        let closed = incidence.values().all(|v| v.len() == 2);

        // Facet adjacency across interior faces: connectivity and a
        // coherent-orientation search in one sweep.
        let n = facets.len();
        let mut adjacency: Vec<Vec<(usize, i8, i8)>> = vec![Vec::new(); n];
        for inc in incidence.values() {
            if let [(f, sf), (g, sg)] = inc[..] {
                adjacency[f].push((g, sf, sg));
                adjacency[g].push((f, sg, sf));
            }
        }
        let mut eps = vec![0i8; n];
        let mut oriented = true;
        let mut reached = 0usize;
        let mut components = 0usize;
        for start in 0..n {
            if eps[start] != 0 {
                continue;
            }
            components += 1;
            eps[start] = 1;
            reached += 1;
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                for &(g, sf, sg) in &adjacency[f] {
                    // induced orientations on the shared face must cancel
                    let need = -eps[f] * sf * sg;
                    if eps[g] == 0 {
                        eps[g] = need;
                        reached += 1;
                        stack.push(g);
                    } else if eps[g] != need {
                        oriented = false;
                    }
                }
            }
        }
        let connected = components == 1 && reached == n;

        let mut vertices: Vec<usize> = facets.iter().flatten().copied().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut edges: Vec<(usize, usize)> = facets
            .iter()
            .flat_map(|f| {
                let mut s = *f;
                s.sort_unstable();
                [
                    (s[0], s[1]),
                    (s[0], s[2]),
                    (s[0], s[3]),
                    (s[1], s[2]),
                    (s[1], s[3]),
                    (s[2], s[3]),
                ]
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut triangles: Vec<[usize; 3]> = incidence.keys().copied().collect();
        triangles.sort_unstable();

        Ok(TriangulationData {
            vertices,
            edges,
            triangles,
            eps,
            report: ValidationReport {
                closed,
                oriented,
                connected,
                is_complex: true,
            },
        })
    }

    /// Boundary maps of the oriented simplicial chain complex.
    fn boundaries(&self, facets: &[[usize; 4]]) -> Vec<IntegerMatrix> {
        let vidx: HashMap<usize, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let eidx: HashMap<(usize, usize), usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let tidx: HashMap<[usize; 3], usize> = self
            .triangles
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, i))
            .collect();

        let mut d1 = IntegerMatrix::zeros(self.vertices.len(), self.edges.len());
        for (j, &(a, b)) in self.edges.iter().enumerate() {
            d1[(vidx[&b], j)] += 1;
            d1[(vidx[&a], j)] -= 1;
        }

        let mut d2 = IntegerMatrix::zeros(self.edges.len(), self.triangles.len());
        for (j, &[a, b, c]) in self.triangles.iter().enumerate() {
            d2[(eidx[&(b, c)], j)] += 1;
            d2[(eidx[&(a, c)], j)] -= 1;
            d2[(eidx[&(a, b)], j)] += 1;
        }

        let mut d3 = IntegerMatrix::zeros(self.triangles.len(), facets.len());
        for (j, facet) in facets.iter().enumerate() {
            for (tri, sign) in facet_faces(facet) {
                let signed = i64::from(sign) * i64::from(self.eps[j]);
                d3[(tidx[&tri], j)] += signed;
            }
        }

        vec![d1, d2, d3]
    }
}

/// A validated manifold with its chain complex and lazily computed
/// homology.
#[derive(Debug)]
pub struct Manifold {
    label: String,
    presentation: ManifoldPresentation,
    boundaries: Vec<IntegerMatrix>,
    /// sorted edge label pairs, for triangulations
    edges: Option<Vec<(usize, usize)>>,
    report: ValidationReport,
    homology: Vec<OnceLock<HomologyGroup>>,
}

impl Manifold {
    /// Validate a presentation and build its chain complex. All manifold
    /// hypotheses (closed, oriented, connected; `d o d = 0` for direct
    /// complexes) must hold, otherwise the violated one is reported.
    pub fn new(presentation: ManifoldPresentation) -> Result<Self, ValidationError> {
        let (boundaries, edges, report, label) = match &presentation {
            ManifoldPresentation::Triangulation3 { facets } => {
                let data = TriangulationData::analyze(facets)?;
                if !data.report.closed {
                    return Err(ValidationError::NotClosed);
                }
                if !data.report.oriented {
                    return Err(ValidationError::NonOrientable);
                }
                if !data.report.connected {
                    return Err(ValidationError::NotConnected);
                }
                let boundaries = data.boundaries(facets);
                debug_assert!(chain_products_vanish(&boundaries));
                (
                    boundaries,
                    Some(data.edges),
                    data.report,
                    "triangulation".to_string(),
                )
            }
            ManifoldPresentation::ChainComplexDirect { boundaries } => {
                check_chain_shapes(boundaries)?;
                if let Some(k) = (0..boundaries.len().saturating_sub(1))
                    .find(|&k| !boundaries[k].mul(&boundaries[k + 1]).is_zero())
                {
                    return Err(ValidationError::NotAChainComplex { k: k + 1 });
                }
                let report = ValidationReport {
                    closed: true,
                    oriented: true,
                    connected: true,
                    is_complex: true,
                };
                (
                    boundaries.clone(),
                    None,
                    report,
                    "chain-complex".to_string(),
                )
            }
        };
        let dim = boundaries.len();
        Ok(Manifold {
            label,
            presentation,
            boundaries,
            edges,
            report,
            homology: (0..=dim).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn presentation(&self) -> &ManifoldPresentation {
        &self.presentation
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    /// Top chain degree (3 for triangulations).
    pub fn dimension(&self) -> usize {
        self.boundaries.len()
    }

    /// Rank of the chain group `C_k`.
    pub fn chain_rank(&self, k: usize) -> usize {
        assert!(k <= self.dimension(), "degree out of range");
        if k == 0 {
            self.boundaries[0].rows()
        } else {
            self.boundaries[k - 1].cols()
        }
    }

    /// Boundary map `d_k: C_k -> C_{k-1}`, with the zero maps at both ends
    /// (`d_0` and `d_{dim+1}`) synthesized on demand.
    pub fn boundary(&self, k: usize) -> IntegerMatrix {
        if k == 0 {
            IntegerMatrix::zeros(0, self.chain_rank(0))
        } else if k <= self.dimension() {
            self.boundaries[k - 1].clone()
        } else if k == self.dimension() + 1 {
            IntegerMatrix::zeros(self.chain_rank(self.dimension()), 0)
        } else {
            panic!("boundary degree {k} out of range");
        }
    }

    /// Integral homology in degree `k`, computed once and cached.
    pub fn homology(&self, k: usize) -> Result<&HomologyGroup, HomologyError> {
        if k > self.dimension() {
            return Err(HomologyError::DegreeOutOfRange {
                degree: k,
                max: self.dimension(),
            });
        }
        Ok(self.homology[k].get_or_init(|| {
            HomologyGroup::from_boundaries(k, &self.boundary(k), &self.boundary(k + 1))
        }))
    }

    /// First homology; every presentation here has dimension >= 1.
    pub fn h1(&self) -> &HomologyGroup {
        self.homology(1).expect("dimension >= 1")
    }

    /// Canonical coordinates of a 1-cycle.
    pub fn cycle_class(&self, chain: &[BigInt]) -> Result<HomologyClass, HomologyError> {
        self.h1().class_of_cycle(chain)
    }

    /// Assemble a 1-chain vector from a signed edge multiset.
    pub fn chain_from_edges(&self, signed: &[(usize, i64)]) -> Result<Vec<BigInt>, HomologyError> {
        let n = self.chain_rank(1);
        let mut chain = vec![BigInt::zero(); n];
        for &(edge, coeff) in signed {
            if edge >= n {
                return Err(HomologyError::ShapeMismatch(format!(
                    "edge index {edge} out of range (C_1 has rank {n})"
                )));
            }
            chain[edge] += BigInt::from(coeff);
        }
        Ok(chain)
    }

    /// Edge labels of a triangulation (sorted pairs, in index order).
    pub fn edge_labels(&self) -> Option<&[(usize, usize)]> {
        self.edges.as_deref()
    }

    /// Index of the edge with the given endpoints, for triangulations.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges
            .as_ref()
            .and_then(|edges| edges.binary_search(&key).ok())
    }

    // ---- built-in manifolds ---------------------------------------------

    /// The 3-sphere as the boundary of the 4-simplex.
    pub fn sphere3() -> Manifold {
        let facets = vec![
            [0, 1, 2, 3],
            [0, 1, 2, 4],
            [0, 1, 3, 4],
            [0, 2, 3, 4],
            [1, 2, 3, 4],
        ];
        Manifold::new(ManifoldPresentation::Triangulation3 { facets })
            .expect("boundary of 4-simplex is a valid closed manifold")
            .with_label("builtin:s3")
    }

    /// The 3-torus: a 3x3x3 periodic grid of cubes, each split into six
    /// tetrahedra, shipped as a data file.
    pub fn torus3() -> Manifold {
        let text = include_str!("../data/t3.tri");
        let presentation = parse_triangulation(text).expect("shipped data file is well-formed");
        Manifold::new(presentation)
            .expect("shipped torus triangulation is a valid closed manifold")
            .with_label("builtin:t3")
    }

    /// `S^1 x S^2` as a chain-level CW presentation.
    pub fn s1_x_s2() -> Manifold {
        Manifold::new(cw_one_cell_per_degree(0))
            .expect("valid complex")
            .with_label("builtin:s1xs2")
    }

    /// The lens space `L(p, q)` as a chain-level CW presentation; only `p`
    /// enters the chain complex. `p = 0` (with `q = 1`) is `S^1 x S^2`.
    pub fn lens(p: u64, q: u64) -> Result<Manifold, ValidationError> {
        if num_integer::gcd(p, q) != 1 {
            return Err(ValidationError::BadLensParameters { p, q });
        }
        Ok(Manifold::new(cw_one_cell_per_degree(p))?.with_label(format!("builtin:lens:{p}:{q}")))
    }
}

/// One cell in each degree 0..3 with the middle boundary map `[p]`.
fn cw_one_cell_per_degree(p: u64) -> ManifoldPresentation {
    ManifoldPresentation::ChainComplexDirect {
        boundaries: vec![
            IntegerMatrix::zeros(1, 1),
            IntegerMatrix::from_rows(&[vec![BigInt::from(p)]]),
            IntegerMatrix::zeros(1, 1),
        ],
    }
}

/// Parse the triangulation file format:
///
/// ```text
/// dim 3
/// facets N
/// a b c d        (N lines of 0-based vertex indices)
/// ```
pub fn parse_triangulation(text: &str) -> Result<ManifoldPresentation, ParseError> {
    let mut reader = LineReader::new(text);
    let (ln, header) = reader.next_content_line("`dim 3` header")?;
    if header.split_whitespace().collect::<Vec<_>>() != ["dim", "3"] {
        return Err(ParseError::new(ln, "expected `dim 3`"));
    }
    let (ln, count_line) = reader.next_content_line("`facets N` header")?;
    let parts: Vec<&str> = count_line.split_whitespace().collect();
    let count: usize = match parts[..] {
        ["facets", n] => n
            .parse()
            .map_err(|_| ParseError::new(ln, "invalid facet count"))?,
        _ => return Err(ParseError::new(ln, "expected `facets N`")),
    };
    let mut facets = Vec::with_capacity(count);
    for _ in 0..count {
        let (ln, line) = reader.next_content_line("facet line")?;
        let ids: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| ParseError::new(ln, format!("invalid vertex index `{t}`")))
            })
            .collect::<Result<_, _>>()?;
        if ids.len() != 4 {
            return Err(ParseError::new(
                ln,
                format!("expected 4 vertex indices, found {}", ids.len()),
            ));
        }
        facets.push([ids[0], ids[1], ids[2], ids[3]]);
    }
    reader.expect_end()?;
    Ok(ManifoldPresentation::Triangulation3 { facets })
}

/// Parse the chain-complex file format:
///
/// ```text
/// chain dim D
/// <matrix block d1>
/// ...
/// <matrix block dD>
/// ```
///
/// where each matrix block uses the `rows cols` text format.
pub fn parse_chain_complex(text: &str) -> Result<ManifoldPresentation, ParseError> {
    let mut reader = LineReader::new(text);
    let (ln, header) = reader.next_content_line("`chain dim D` header")?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let dim: usize = match parts[..] {
        ["chain", "dim", d] => d
            .parse()
            .map_err(|_| ParseError::new(ln, "invalid dimension"))?,
        _ => return Err(ParseError::new(ln, "expected `chain dim D`")),
    };
    let mut boundaries = Vec::with_capacity(dim);
    for _ in 0..dim {
        boundaries.push(IntegerMatrix::parse_block(&mut reader)?);
    }
    reader.expect_end()?;
    Ok(ManifoldPresentation::ChainComplexDirect { boundaries })
}
