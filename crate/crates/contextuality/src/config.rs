//! Signed observable configurations and their evaluation under ±1
//! assignments.
//!
//! A configuration is a pair (O, C): a point set O and a set of three-point
//! contexts C, each context carrying the expected sign ε of its operator
//! product. An assignment a: O → {±1} satisfies a context when the product
//! of its three values equals ε; the contexts it fails form the unsatisfied
//! configuration, whose size is the Hamming distance being minimized.

use crate::error::{Error, Result};
use crate::pauli::{triple_sign, Observable};
use crate::space::{PointSet, Quadric, SymplecticSpace};

/// A configuration over a space's points with signed three-point contexts.
///
/// Points are stored as sorted global point indices; contexts address
/// points by their position in that list (local index), keeping solver
/// state dense.
#[derive(Clone, PartialEq, Debug)]
pub struct Configuration {
    n_qubits: u32,
    point_ids: Vec<u32>,
    contexts: Vec<[u32; 3]>,
    expected: Vec<i8>,
    space_line_ids: Option<Vec<u32>>,
    adj_offsets: Vec<u32>,
    adj_contexts: Vec<u32>,
}

impl Configuration {
    /// The configuration of all points and lines of a space.
    pub fn from_space(space: &SymplecticSpace) -> Self {
        let point_ids: Vec<u32> = (0..space.point_count()).collect();
        let contexts: Vec<[u32; 3]> = (0..space.line_count())
            .map(|i| space.line_points(i))
            .collect();
        let expected: Vec<i8> = (0..space.line_count()).map(|i| space.line_sign(i)).collect();
        let space_line_ids = Some((0..space.line_count() as u32).collect());
        Self::assemble(space.n_qubits(), point_ids, contexts, expected, space_line_ids)
    }

    /// The configuration of a quadric's points and fully contained lines.
    pub fn from_quadric(space: &SymplecticSpace, quadric: &Quadric) -> Self {
        let point_ids = quadric.member_ids().to_vec();
        let local = LocalIndex::new(&point_ids);
        let contexts: Vec<[u32; 3]> = quadric
            .line_ids()
            .iter()
            .map(|&line| space.line_points(line as usize).map(|pt| local.get(pt)))
            .collect();
        let expected: Vec<i8> = quadric
            .line_ids()
            .iter()
            .map(|&line| space.line_sign(line as usize))
            .collect();
        Self::assemble(
            space.n_qubits(),
            point_ids,
            contexts,
            expected,
            Some(quadric.line_ids().to_vec()),
        )
    }

    /// A custom configuration given as observable triples. Signs are
    /// computed from the operator products; the point set is the union of
    /// the triples, identified by canonical point index.
    pub fn from_observable_lines(lines: &[[Observable; 3]]) -> Result<Self> {
        let Some(first) = lines.first() else {
            return Err(Error::NoContexts);
        };
        let n_qubits = first[0].n_qubits();
        let mut expected = Vec::with_capacity(lines.len());
        let mut global_triples = Vec::with_capacity(lines.len());
        let mut point_ids: Vec<u32> = Vec::new();
        for line in lines {
            expected.push(triple_sign(&line[0], &line[1], &line[2])?);
            let mut triple = [0u32; 3];
            for (slot, observable) in triple.iter_mut().zip(line.iter()) {
                if observable.n_qubits() != n_qubits {
                    return Err(Error::QubitCountMismatch(observable.n_qubits(), n_qubits));
                }
                if observable.is_identity() {
                    return Err(Error::IdentityIndex);
                }
                *slot = (observable.id() - 1) as u32;
            }
            triple.sort_unstable();
            point_ids.extend_from_slice(&triple);
            global_triples.push(triple);
        }
        point_ids.sort_unstable();
        point_ids.dedup();
        let local = LocalIndex::new(&point_ids);
        let contexts: Vec<[u32; 3]> = global_triples
            .iter()
            .map(|t| t.map(|pt| local.get(pt)))
            .collect();
        Ok(Self::assemble(n_qubits, point_ids, contexts, expected, None))
    }

    fn assemble(
        n_qubits: u32,
        point_ids: Vec<u32>,
        contexts: Vec<[u32; 3]>,
        expected: Vec<i8>,
        space_line_ids: Option<Vec<u32>>,
    ) -> Self {
        debug_assert!(point_ids.windows(2).all(|w| w[0] < w[1]));
        let mut degree = vec![0u32; point_ids.len()];
        for context in &contexts {
            for &pt in context {
                degree[pt as usize] += 1;
            }
        }
        let mut adj_offsets = Vec::with_capacity(point_ids.len() + 1);
        let mut acc = 0u32;
        adj_offsets.push(0);
        for &d in &degree {
            acc += d;
            adj_offsets.push(acc);
        }
        let mut cursor: Vec<u32> = adj_offsets[..point_ids.len()].to_vec();
        let mut adj_contexts = vec![0u32; 3 * contexts.len()];
        for (i, context) in contexts.iter().enumerate() {
            for &pt in context {
                adj_contexts[cursor[pt as usize] as usize] = i as u32;
                cursor[pt as usize] += 1;
            }
        }
        Configuration {
            n_qubits,
            point_ids,
            contexts,
            expected,
            space_line_ids,
            adj_offsets,
            adj_contexts,
        }
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn point_count(&self) -> usize {
        self.point_ids.len()
    }

    pub fn context_count(&self) -> usize {
        self.contexts.len()
    }

    pub fn negative_context_count(&self) -> u64 {
        self.expected.iter().filter(|&&e| e == -1).count() as u64
    }

    /// Global point indices, ascending; local index = position here.
    pub fn point_ids(&self) -> &[u32] {
        &self.point_ids
    }

    /// A context's three points as local indices.
    pub fn context(&self, index: usize) -> [u32; 3] {
        self.contexts[index]
    }

    /// Expected sign ε of a context.
    pub fn expected_sign(&self, index: usize) -> i8 {
        self.expected[index]
    }

    /// Space line indices behind the contexts, when the configuration was
    /// derived from a space or quadric.
    pub fn space_line_ids(&self) -> Option<&[u32]> {
        self.space_line_ids.as_deref()
    }

    /// Contexts through a local point.
    pub fn contexts_through(&self, local_point: u32) -> &[u32] {
        let lo = self.adj_offsets[local_point as usize] as usize;
        let hi = self.adj_offsets[local_point as usize + 1] as usize;
        &self.adj_contexts[lo..hi]
    }

    /// The observable at a local point index.
    pub fn observable(&self, local_point: u32) -> Observable {
        let id = u64::from(self.point_ids[local_point as usize]) + 1;
        let mu = id >> self.n_qubits;
        let nu = id & crate::pauli::word_mask(self.n_qubits);
        Observable::new(mu, nu, self.n_qubits).expect("stored point id is valid")
    }

    /// The local index of a global point, if present.
    pub fn local_index_of(&self, global_point: u32) -> Option<u32> {
        self.point_ids
            .binary_search(&global_point)
            .ok()
            .map(|i| i as u32)
    }

    fn check_assignment(&self, assignment: &Assignment) -> Result<()> {
        if assignment.values.len() != self.point_ids.len() {
            return Err(Error::AssignmentSizeMismatch(
                assignment.values.len(),
                self.point_ids.len(),
            ));
        }
        Ok(())
    }

    /// Product of a context's three assigned values.
    fn context_product(&self, assignment: &Assignment, context: usize) -> i8 {
        self.contexts[context]
            .iter()
            .map(|&pt| assignment.values[pt as usize])
            .product()
    }

    /// Number of contexts whose product sign differs from the expected one.
    pub fn hamming_distance(&self, assignment: &Assignment) -> Result<u64> {
        self.check_assignment(assignment)?;
        Ok((0..self.contexts.len())
            .filter(|&c| self.context_product(assignment, c) != self.expected[c])
            .count() as u64)
    }

    /// The unsatisfied configuration: contexts failed by the assignment,
    /// with the points they cover.
    pub fn unsatisfied(&self, assignment: &Assignment) -> Result<UnsatisfiedConfiguration> {
        self.check_assignment(assignment)?;
        let context_ids: Vec<u32> = (0..self.contexts.len())
            .filter(|&c| self.context_product(assignment, c) != self.expected[c])
            .map(|c| c as u32)
            .collect();
        Ok(self.subconfiguration(context_ids))
    }

    /// The unsatisfied configuration made of the given context indices.
    pub(crate) fn subconfiguration(&self, context_ids: Vec<u32>) -> UnsatisfiedConfiguration {
        let lines: Vec<[u32; 3]> = context_ids
            .iter()
            .map(|&c| self.contexts[c as usize].map(|pt| self.point_ids[pt as usize]))
            .collect();
        let mut covered_points: Vec<u32> = lines.iter().flatten().copied().collect();
        covered_points.sort_unstable();
        covered_points.dedup();
        UnsatisfiedConfiguration {
            n_qubits: self.n_qubits,
            context_ids,
            lines,
            covered_points,
        }
    }
}

/// A ±1 value per configuration point, in local point order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    values: Vec<i8>,
}

impl Assignment {
    /// The all-(+1) assignment, the canonical search start.
    pub fn all_plus(config: &Configuration) -> Self {
        Assignment {
            values: vec![1; config.point_count()],
        }
    }

    pub fn from_values(values: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|v| !matches!(v, 1 | -1)) {
            return Err(Error::AssignmentValue(bad));
        }
        Ok(Assignment { values })
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value(&self, local_point: u32) -> i8 {
        self.values[local_point as usize]
    }

    pub fn flip(&mut self, local_point: u32) {
        self.values[local_point as usize] = -self.values[local_point as usize];
    }
}

/// The part of a configuration an assignment fails to satisfy: its contexts
/// (as global point triples) and the points they cover.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnsatisfiedConfiguration {
    n_qubits: u32,
    context_ids: Vec<u32>,
    lines: Vec<[u32; 3]>,
    covered_points: Vec<u32>,
}

impl UnsatisfiedConfiguration {
    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    /// Parent-configuration indices of the unsatisfied contexts, ascending.
    pub fn context_ids(&self) -> &[u32] {
        &self.context_ids
    }

    /// Unsatisfied contexts as global point triples.
    pub fn lines(&self) -> &[[u32; 3]] {
        &self.lines
    }

    /// Points incident to at least one unsatisfied context, ascending.
    pub fn covered_points(&self) -> &[u32] {
        &self.covered_points
    }

    pub fn context_count(&self) -> usize {
        self.lines.len()
    }

    /// Restriction to a point subset: the contexts whose three points all
    /// lie in the subset, with the induced covered point set.
    pub fn restrict(&self, subset: &PointSet) -> UnsatisfiedConfiguration {
        let mut context_ids = Vec::new();
        let mut lines = Vec::new();
        for (i, line) in self.lines.iter().enumerate() {
            if line.iter().all(|&pt| subset.contains(pt)) {
                context_ids.push(self.context_ids[i]);
                lines.push(*line);
            }
        }
        let mut covered_points: Vec<u32> = lines.iter().flatten().copied().collect();
        covered_points.sort_unstable();
        covered_points.dedup();
        UnsatisfiedConfiguration {
            n_qubits: self.n_qubits,
            context_ids,
            lines,
            covered_points,
        }
    }
}

/// Reverse lookup from global point id to local index.
struct LocalIndex<'a> {
    sorted_ids: &'a [u32],
}

impl<'a> LocalIndex<'a> {
    fn new(sorted_ids: &'a [u32]) -> Self {
        LocalIndex { sorted_ids }
    }

    fn get(&self, global: u32) -> u32 {
        self.sorted_ids
            .binary_search(&global)
            .expect("point belongs to the configuration") as u32
    }
}
