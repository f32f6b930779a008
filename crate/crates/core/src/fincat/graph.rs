use std::collections::{HashMap, HashSet};

use crate::error::{CategoryError, Error, Result};

use super::{FinCat, Morphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite directed multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FinGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl FinGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<FinGraph> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(CategoryError::MalformedTable(format!("duplicate vertex {v}")).into());
            }
        }
        let mut seen = HashSet::new();
        for e in &edges {
            if !seen.insert(e.id.as_str()) {
                return Err(CategoryError::MalformedTable(format!("duplicate edge {}", e.id)).into());
            }
            if e.src >= vertices.len() || e.dst >= vertices.len() {
                return Err(
                    CategoryError::MalformedTable(format!("edge {} has an undeclared endpoint", e.id))
                        .into(),
                );
            }
        }
        Ok(FinGraph { vertices, edges })
    }

    /// Builds a graph from `(id, src, dst)` triples naming vertices.
    pub fn from_names<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<FinGraph> {
        let vs: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = vs.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut es = Vec::new();
        for (id, s, d) in edges {
            let lookup = |name: &str| {
                index.get(name).copied().ok_or_else(|| {
                    Error::from(CategoryError::MalformedTable(format!("unknown vertex {name}")))
                })
            };
            es.push(Edge {
                id: id.as_ref().to_string(),
                src: lookup(s.as_ref())?,
                dst: lookup(d.as_ref())?,
            });
        }
        FinGraph::new(vs, es)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// A directed cycle, as a list of edge indices, if one exists.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.vertices.len();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.src].push(i);
        }
        let mut mark = vec![Mark::New; n];
        let mut path: Vec<usize> = Vec::new();
        fn visit(
            v: usize,
            g: &FinGraph,
            out: &[Vec<usize>],
            mark: &mut [Mark],
            path: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            mark[v] = Mark::Active;
            for &e in &out[v] {
                let w = g.edges[e].dst;
                match mark[w] {
                    Mark::Active => {
                        let start = path
                            .iter()
                            .position(|&pe| g.edges[pe].src == w)
                            .unwrap_or(path.len());
                        let mut cycle = path[start..].to_vec();
                        cycle.push(e);
                        return Some(cycle);
                    }
                    Mark::New => {
                        path.push(e);
                        if let Some(c) = visit(w, g, out, mark, path) {
                            return Some(c);
                        }
                        path.pop();
                    }
                    Mark::Done => {}
                }
            }
            mark[v] = Mark::Done;
            None
        }
        for v in 0..n {
            if mark[v] == Mark::New {
                if let Some(c) = visit(v, self, &out, &mut mark, &mut path) {
                    return Some(c);
                }
            }
        }
        None
    }
}

/// Name of the morphism of a free category given by an edge path
/// (listed first edge first).
pub fn path_name(graph: &FinGraph, vertex: usize, path: &[usize]) -> String {
    if path.is_empty() {
        format!("id_{}", graph.vertices[vertex])
    } else {
        path.iter()
            .map(|&e| graph.edges[e].id.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// The free category on an acyclic graph: morphisms are edge paths,
/// composition is concatenation.
pub fn free_category_on_graph(graph: &FinGraph) -> Result<FinCat> {
    if let Some(cycle) = graph.find_cycle() {
        return Err(Error::CyclicGraph(
            cycle.iter().map(|&e| graph.edges[e].id.clone()).collect(),
        ));
    }
    let n = graph.vertices.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in graph.edges.iter().enumerate() {
        out[e.src].push(i);
    }
    // paths grouped by source vertex, in depth-first order
    let mut paths: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for v in 0..n {
        let mut stack = vec![(v, Vec::new())];
        while let Some((w, p)) = stack.pop() {
            for &e in out[w].iter().rev() {
                let mut q = p.clone();
                q.push(e);
                stack.push((graph.edges[e].dst, q));
            }
            paths.push((v, w, p));
        }
    }
    paths.sort_by(|a, b| (a.0, a.2.len(), &a.2).cmp(&(b.0, b.2.len(), &b.2)));
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut identities = vec![0; n];
    let mut morphisms = Vec::with_capacity(paths.len());
    for (i, (s, d, p)) in paths.iter().enumerate() {
        if p.is_empty() {
            identities[*s] = i;
        } else {
            index.insert(p.clone(), i);
        }
        morphisms.push(Morphism {
            id: path_name(graph, *s, p),
            src: *s,
            dst: *d,
        });
    }
    let mut composition = HashMap::new();
    for (fi, (_, fd, fp)) in paths.iter().enumerate() {
        if fp.is_empty() {
            continue;
        }
        for (gi, (gs, _, gp)) in paths.iter().enumerate() {
            if gp.is_empty() || gs != fd {
                continue;
            }
            let mut q = fp.clone();
            q.extend_from_slice(gp);
            composition.insert((gi, fi), index[&q]);
        }
    }
    Ok(FinCat::from_parts(
        graph.vertices.clone(),
        morphisms,
        identities,
        composition,
    ))
}

/// Why a category fails to be free on a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonFreeWitness {
    /// `g ∘ f` is an identity although neither factor is.
    IdentityComposite { g: String, f: String },
    /// A composable cycle of atoms.
    AtomCycle(Vec<String>),
    /// A non-identity morphism that is not a composite of atoms.
    NoFactorization(String),
    /// A morphism with two distinct atom factorizations (first edge first).
    AmbiguousFactorization {
        morphism: String,
        first: Vec<String>,
        second: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessDecision {
    Free(FinGraph),
    NotFree(NonFreeWitness),
}

impl FreenessDecision {
    pub fn is_free(&self) -> bool {
        matches!(self, FreenessDecision::Free(_))
    }
}

/// Non-identity morphisms that admit no factorization into two
/// non-identities.
pub fn atoms(c: &FinCat) -> Vec<usize> {
    let mut composite = vec![false; c.morphism_count()];
    for (&(g, f), &h) in c.composition_table() {
        if !c.is_identity(g) && !c.is_identity(f) {
            composite[h] = true;
        }
    }
    c.non_identity_morphisms().filter(|&f| !composite[f]).collect()
}

/// Decides whether `c` is the free category on a graph, returning the
/// generating graph of atoms or a witness.
pub fn is_free_on_graph(c: &FinCat) -> FreenessDecision {
    for (g, f, h) in c.sorted_composition() {
        if !c.is_identity(g) && !c.is_identity(f) && c.is_identity(h) {
            return FreenessDecision::NotFree(NonFreeWitness::IdentityComposite {
                g: c.morphism_name(g).to_string(),
                f: c.morphism_name(f).to_string(),
            });
        }
    }
    let atom_list = atoms(c);
    let edges: Vec<Edge> = atom_list
        .iter()
        .map(|&a| Edge {
            id: c.morphism_name(a).to_string(),
            src: c.src(a),
            dst: c.dst(a),
        })
        .collect();
    let graph = FinGraph {
        vertices: c.objects().to_vec(),
        edges,
    };
    if let Some(cycle) = graph.find_cycle() {
        return FreenessDecision::NotFree(NonFreeWitness::AtomCycle(
            cycle.iter().map(|&e| graph.edges[e].id.clone()).collect(),
        ));
    }
    // evaluate every atom path; acyclicity bounds their length
    let mut factorization: Vec<Option<Vec<usize>>> = vec![None; c.morphism_count()];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); c.object_count()];
    for (i, e) in graph.edges.iter().enumerate() {
        out[e.src].push(i);
    }
    for v in 0..c.object_count() {
        let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(v, c.identity(v), Vec::new())];
        while let Some((w, value, path)) = stack.pop() {
            if !path.is_empty() {
                match &factorization[value] {
                    Some(prev) => {
                        let name = |p: &[usize]| -> Vec<String> {
                            p.iter().map(|&e| graph.edges[e].id.clone()).collect()
                        };
                        return FreenessDecision::NotFree(
                            NonFreeWitness::AmbiguousFactorization {
                                morphism: c.morphism_name(value).to_string(),
                                first: name(prev),
                                second: name(&path),
                            },
                        );
                    }
                    None => factorization[value] = Some(path.clone()),
                }
            }
            for &e in out[w].iter().rev() {
                let next = c.comp(atom_list[e], value);
                let mut p = path.clone();
                p.push(e);
                stack.push((graph.edges[e].dst, next, p));
            }
        }
    }
    if let Some(f) = c
        .non_identity_morphisms()
        .find(|&f| factorization[f].is_none())
    {
        return FreenessDecision::NotFree(NonFreeWitness::NoFactorization(
            c.morphism_name(f).to_string(),
        ));
    }
    FreenessDecision::Free(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build;

    fn chain() -> FinGraph {
        FinGraph::from_names(&["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c")]).unwrap()
    }

    #[test]
    fn free_on_path_graph() {
        let c = free_category_on_graph(&chain()).unwrap();
        c.check_laws().unwrap();
        assert_eq!(c.object_count(), 3);
        assert_eq!(c.morphism_count(), 6);
        let gf = c.comp(c.morphism_id("g").unwrap(), c.morphism_id("f").unwrap());
        assert_eq!(c.morphism_name(gf), "f.g");
    }

    #[test]
    fn loop_is_cyclic() {
        let g = FinGraph::from_names(&["a"], &[("l", "a", "a")]).unwrap();
        match free_category_on_graph(&g) {
            Err(Error::CyclicGraph(c)) => assert_eq!(c, vec!["l".to_string()]),
            other => panic!("expected a cycle, got {other:?}"),
        }
    }

    #[test]
    fn empty_graph_gives_empty_category() {
        let c = free_category_on_graph(&FinGraph::default()).unwrap();
        assert_eq!(c.object_count(), 0);
        assert_eq!(c.morphism_count(), 0);
    }

    #[test]
    fn freeness_of_examples() {
        let c = free_category_on_graph(&chain()).unwrap();
        match is_free_on_graph(&c) {
            FreenessDecision::Free(g) => assert_eq!(g, chain()),
            other => panic!("{other:?}"),
        }
        match is_free_on_graph(&build::cyclic_group(2)) {
            FreenessDecision::NotFree(NonFreeWitness::IdentityComposite { g, f }) => {
                assert_eq!((g.as_str(), f.as_str()), ("g^1", "g^1"))
            }
            other => panic!("{other:?}"),
        }
        match is_free_on_graph(&build::discrete_n(3)) {
            FreenessDecision::Free(g) => assert!(g.edges().is_empty()),
            other => panic!("{other:?}"),
        }
        // the commutative square identifies two atom paths
        let sq = build::thin(&["a", "b", "c", "d"], |i, j| {
            i == 0 || (j == 3) || i == j
        });
        assert!(matches!(
            is_free_on_graph(&sq),
            FreenessDecision::NotFree(NonFreeWitness::AmbiguousFactorization { .. })
        ));
        // e = e∘e, so e is not an atom and nothing generates it
        assert_eq!(
            is_free_on_graph(&build::free_idempotent()),
            FreenessDecision::NotFree(NonFreeWitness::NoFactorization("e".into()))
        );
    }
}
