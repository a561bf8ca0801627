//! Balanced biclique to partial sign regularity.
//!
//! Given a bipartite graph `G`, an order `k` and a signature `e`, take a
//! strictly sign-regular matrix `X` whose signature `f` agrees with `e`
//! below order `k` and is negated from `k` on. Keeping `x_ij` exactly where
//! `(u_i, v_j)` is an edge gives a partial matrix whose specified minors of
//! order `k` or more exist iff `G` has a balanced `k`-biclique, and each such
//! minor has the wrong sign for `e`. So the partial matrix fails the
//! `(e, strict)` and `(e, weak)` checks iff `G` has a balanced biclique of
//! size `k`.

use crate::biclique::{has_balanced_biclique, BipartiteGraph};
use crate::error::{Error, Result};
use crate::generator::generate_ssr;
use crate::matrix::PartialMatrix;
use crate::oracle::{check_property_brute, PropertySpec};
use crate::partial::{full_checker_for, recursive_partial_check};
use crate::report::CheckReport;
use crate::signature::Signature;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: BipartiteGraph,
    pub k: usize,
    pub target_signature: Signature,
    pub flipped_signature: Signature,
    /// Strictly sign-regular with `flipped_signature`.
    pub base_matrix: PartialMatrix,
    /// `base_matrix` masked by the edge set of `graph`.
    pub output: PartialMatrix,
}

/// Builds the gadget with a base matrix from the bordering generator.
pub fn build_gadget(graph: &BipartiteGraph, k: usize, target: &Signature) -> Result<GadgetInstance> {
    validate(graph, k, target)?;
    let flipped = target.truncated(order(graph)).flipped_from(k);
    let (base, _) = generate_ssr(graph.left(), graph.right(), &flipped)?;
    assemble(graph, k, target, flipped, base)
}

/// Builds the gadget on a caller-supplied base matrix, which must be
/// `m`×`n` and strictly sign-regular with the flipped signature.
pub fn build_gadget_with_base(
    graph: &BipartiteGraph,
    k: usize,
    target: &Signature,
    base: PartialMatrix,
) -> Result<GadgetInstance> {
    validate(graph, k, target)?;
    if (base.rows(), base.cols()) != (graph.left(), graph.right()) || !base.is_fully_specified() {
        return Err(Error::Shape(format!(
            "base matrix must be a fully specified {}x{} matrix",
            graph.left(),
            graph.right()
        )));
    }
    let flipped = target.truncated(order(graph)).flipped_from(k);
    let report = check_property_brute(&base, &PropertySpec::new(flipped.clone(), true))?;
    if let Some(w) = report.witness {
        return Err(Error::Argument(format!(
            "base matrix is not strictly sign-regular with signature {flipped}: minor on rows {} cols {} is {}",
            w.rows, w.cols, w.value
        )));
    }
    assemble(graph, k, target, flipped, base)
}

fn order(graph: &BipartiteGraph) -> usize {
    graph.left().min(graph.right())
}

fn validate(graph: &BipartiteGraph, k: usize, target: &Signature) -> Result<()> {
    let order = order(graph);
    if k == 0 || k > order {
        return Err(Error::Argument(format!("k must lie in 1..={order}, got {k}")));
    }
    if target.len() < order {
        return Err(Error::Argument(format!(
            "signature has {} signs, the graph needs {order}",
            target.len()
        )));
    }
    Ok(())
}

fn assemble(
    graph: &BipartiteGraph,
    k: usize,
    target: &Signature,
    flipped: Signature,
    base: PartialMatrix,
) -> Result<GadgetInstance> {
    let mut output = base.clone();
    for i in 1..=graph.left() {
        for j in 1..=graph.right() {
            if !graph.has_edge(i, j) {
                output.set(i, j, None);
            }
        }
    }
    Ok(GadgetInstance {
        graph: graph.clone(),
        k,
        target_signature: target.clone(),
        flipped_signature: flipped,
        base_matrix: base,
        output,
    })
}

/// Both partial checks of a gadget plus the biclique decision they encode.
#[derive(Clone, Debug)]
pub struct ReductionOutcome {
    pub instance: GadgetInstance,
    pub strict: bool,
    pub brute: CheckReport,
    pub recursive: CheckReport,
    pub has_balanced_biclique: bool,
}

impl ReductionOutcome {
    /// The checkers agree and the gadget fails exactly when the graph has a
    /// balanced `k`-biclique.
    pub fn holds(&self) -> bool {
        self.brute.passed() == self.recursive.passed() && self.brute.passed() != self.has_balanced_biclique
    }
}

pub fn evaluate_reduction(graph: &BipartiteGraph, k: usize, target: &Signature, strict: bool) -> Result<ReductionOutcome> {
    let instance = build_gadget(graph, k, target)?;
    evaluate_instance(instance, strict)
}

/// Runs both checkers on an existing gadget.
pub fn evaluate_instance(instance: GadgetInstance, strict: bool) -> Result<ReductionOutcome> {
    let spec = PropertySpec::new(instance.target_signature.truncated(order(&instance.graph)), strict);
    let brute = check_property_brute(&instance.output, &spec)?;
    let recursive = recursive_partial_check(&instance.output, &full_checker_for(&spec))?;
    let has_balanced_biclique = has_balanced_biclique(&instance.graph, instance.k);
    Ok(ReductionOutcome {
        instance,
        strict,
        brute,
        recursive,
        has_balanced_biclique,
    })
}

/// True iff the gadget for `(graph, k, target)` fails the `(target, strict)`
/// check exactly when `graph` has a balanced biclique with `k` vertices per
/// side, with the brute-force and recursive checkers agreeing.
pub fn verify_reduction(graph: &BipartiteGraph, k: usize, target: &Signature, strict: bool) -> Result<bool> {
    Ok(evaluate_reduction(graph, k, target, strict)?.holds())
}
