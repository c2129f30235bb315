//! Report construction for the `analyze` subcommand: profiles of an
//! unsatisfied configuration, graph recognitions per line class, and
//! quadric-restriction criteria for full-space records.

use std::collections::BTreeMap;

use serde::Serialize;

use contextuality::{
    connected_line_components, coxeter_graph, degree_profile, dw52_profile, graphs_isomorphic,
    heawood_graph, line_type_profile, lines_in_class, point_degrees, point_hyperplane_graph,
    recognize_hexagon, skeleton_graph, Error, PointSet, QuadricKind, Result, RunRecord,
    SimpleGraph, SymplecticSpace, UnsatisfiedConfiguration, MAX_GRAPH_VERTICES,
};

/// Degree histogram of the reference 315-context elliptic residue; a
/// restriction matching it automatically has 315 contexts, since the
/// degree counts determine the context count.
pub fn elliptic_residue_histogram() -> BTreeMap<u32, u32> {
    BTreeMap::from([(3, 14), (7, 21), (9, 84)])
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub source: String,
    pub command: String,
    pub qubits: u32,
    pub geometry: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_observable: Option<String>,
    pub best_distance: u64,
    pub unsatisfied_contexts: usize,
    pub covered_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profiles: Option<ProfileReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graphs: Option<GraphReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restrict_criteria: Option<RestrictReport>,
}

#[derive(Serialize)]
pub struct ProfileReport {
    /// point degree -> number of covered points of that degree
    pub degree_histogram: BTreeMap<u32, u32>,
    /// sorted degree triple -> number of contexts in that class
    pub line_classes: Vec<ClassCount>,
}

#[derive(Serialize)]
pub struct ClassCount {
    pub class: [u32; 3],
    pub count: u32,
}

#[derive(Serialize)]
pub struct GraphReport {
    /// Named checks on the whole unsatisfied line set.
    pub dw52_profile: bool,
    pub hexagon_profile: bool,
    pub classes: Vec<ClassGraphReport>,
}

#[derive(Serialize)]
pub struct ClassGraphReport {
    pub class: [u32; 3],
    pub line_count: u32,
    /// Line counts of the connected components (for two-role classes,
    /// connectivity runs through vertex-role points only).
    pub component_line_counts: Vec<usize>,
    /// One entry per component of a two-role class: the recognized
    /// skeleton graph, or a diagnostic when unrecognized or skipped.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skeletons: Vec<String>,
    /// Components passing the generalized-hexagon recognition.
    pub hexagon_component_count: usize,
}

#[derive(Serialize)]
pub struct RestrictReport {
    pub elliptic: RestrictKindReport,
    pub hyperbolic: RestrictKindReport,
}

#[derive(Serialize)]
pub struct RestrictKindReport {
    pub criterion: String,
    pub total_quadrics: u32,
    pub satisfied: u32,
    /// restriction context count -> number of quadrics yielding it
    pub restriction_sizes: BTreeMap<usize, u32>,
}

/// The vertex-role degree of a sorted class triple when exactly one
/// degree repeats: that repeated degree, with the remaining point acting
/// as edge midpoint.
fn vertex_role(class: [u32; 3]) -> Option<u32> {
    let [a, b, c] = class;
    if a == b && b == c {
        None
    } else if a == b {
        Some(a)
    } else if b == c {
        Some(b)
    } else {
        None
    }
}

fn named_reference(vertices: usize, edges: usize) -> Option<(&'static str, SimpleGraph)> {
    match (vertices, edges) {
        (14, 21) => Some(("Heawood", heawood_graph())),
        (28, 42) => Some(("Coxeter", coxeter_graph())),
        (30, 105) => Some((
            "point-plane incidence graph of PG(3,2)",
            point_hyperplane_graph(3).expect("reference fits the vertex cap"),
        )),
        (62, 465) => Some((
            "point-hyperplane incidence graph of PG(4,2)",
            point_hyperplane_graph(4).expect("reference fits the vertex cap"),
        )),
        _ => None,
    }
}

fn recognize_skeleton(graph: &SimpleGraph) -> String {
    let v = graph.vertex_count();
    let e = graph.edge_count();
    match named_reference(v, e) {
        Some((name, reference)) if graphs_isomorphic(graph, &reference) => name.to_string(),
        _ => format!("unrecognized ({v} vertices, {e} edges)"),
    }
}

fn class_graph_report(
    class: [u32; 3],
    class_lines: &[[u32; 3]],
    degrees: &BTreeMap<u32, u32>,
) -> ClassGraphReport {
    // The filter set is built from the whole configuration's degree map,
    // so the universe must span every covered point, not just this class.
    let universe = degrees.keys().next_back().map_or(0, |&m| m + 1);
    let (components, vertex_degree) = match vertex_role(class) {
        Some(vertex_degree) => {
            let vertex_points = PointSet::from_ids(
                universe,
                degrees
                    .iter()
                    .filter(|&(_, &d)| d == vertex_degree)
                    .map(|(&p, _)| p),
            );
            (
                connected_line_components(class_lines, Some(&vertex_points)),
                Some(vertex_degree),
            )
        }
        None => (connected_line_components(class_lines, None), None),
    };
    let mut component_line_counts = Vec::new();
    let mut skeletons = Vec::new();
    let mut hexagon_component_count = 0;
    for component in &components {
        component_line_counts.push(component.len());
        let lines: Vec<[u32; 3]> = component.iter().map(|&i| class_lines[i]).collect();
        if recognize_hexagon(&lines) {
            hexagon_component_count += 1;
        }
        if let Some(vertex_degree) = vertex_degree {
            skeletons.push(match skeleton_graph(&lines, degrees, vertex_degree) {
                Ok((graph, _)) => recognize_skeleton(&graph),
                Err(Error::GraphTooLarge(v, _)) => {
                    format!("skipped ({v} vertices exceed the cap of {MAX_GRAPH_VERTICES})")
                }
                Err(e) => format!("skipped ({e})"),
            });
        }
    }
    ClassGraphReport {
        class,
        line_count: class_lines.len() as u32,
        component_line_counts,
        skeletons,
        hexagon_component_count,
    }
}

pub fn graph_report(unsatisfied: &UnsatisfiedConfiguration) -> GraphReport {
    let lines = unsatisfied.lines();
    let degrees = point_degrees(lines);
    let profile = line_type_profile(lines);
    let classes = profile
        .classes
        .keys()
        .map(|&class| {
            let class_lines = lines_in_class(lines, &degrees, class);
            class_graph_report(class, &class_lines, &degrees)
        })
        .collect();
    GraphReport {
        dw52_profile: dw52_profile(lines),
        hexagon_profile: recognize_hexagon(lines),
        classes,
    }
}

fn restrict_kind_report(
    space: &SymplecticSpace,
    unsatisfied: &UnsatisfiedConfiguration,
    kind: QuadricKind,
) -> Result<RestrictKindReport> {
    let include_identity = kind == QuadricKind::Hyperbolic;
    let quadrics = space.enumerate_quadrics(kind, include_identity)?;
    let reference = elliptic_residue_histogram();
    let mut satisfied = 0;
    let mut restriction_sizes: BTreeMap<usize, u32> = BTreeMap::new();
    for quadric in &quadrics {
        let restriction = unsatisfied.restrict(quadric.members());
        *restriction_sizes
            .entry(restriction.context_count())
            .or_insert(0) += 1;
        let holds = match kind {
            QuadricKind::Elliptic => {
                degree_profile(restriction.lines()).histogram == reference
            }
            QuadricKind::Hyperbolic => dw52_profile(restriction.lines()),
        };
        if holds {
            satisfied += 1;
        }
    }
    let criterion = match kind {
        QuadricKind::Elliptic => {
            "restriction has the reference elliptic residue profile (degrees {3:14, 7:21, 9:84}, hence 315 contexts)"
        }
        QuadricKind::Hyperbolic => {
            "restriction has the DW(5,2) profile (135 points, 315 contexts, every point of degree 7)"
        }
    };
    Ok(RestrictKindReport {
        criterion: criterion.to_string(),
        total_quadrics: quadrics.len() as u32,
        satisfied,
        restriction_sizes,
    })
}

pub fn restrict_report(
    record: &RunRecord,
    unsatisfied: &UnsatisfiedConfiguration,
) -> Result<RestrictReport> {
    if record.geometry != contextuality::Geometry::Full {
        return Err(Error::RecordMismatch(
            "restriction criteria apply to full-space records only".into(),
        ));
    }
    let space = SymplecticSpace::build(record.qubits)?;
    Ok(RestrictReport {
        elliptic: restrict_kind_report(&space, unsatisfied, QuadricKind::Elliptic)?,
        hyperbolic: restrict_kind_report(&space, unsatisfied, QuadricKind::Hyperbolic)?,
    })
}

pub fn profile_report(unsatisfied: &UnsatisfiedConfiguration) -> ProfileReport {
    let lines = unsatisfied.lines();
    let degree = degree_profile(lines);
    let classes = line_type_profile(lines)
        .classes
        .into_iter()
        .map(|(class, count)| ClassCount { class, count })
        .collect();
    ProfileReport {
        degree_histogram: degree.histogram,
        line_classes: classes,
    }
}

pub fn print_human(report: &AnalysisReport) {
    println!(
        "record: {} ({}, {} qubits, {}{})",
        report.source,
        report.command,
        report.qubits,
        report.geometry,
        report
            .index_observable
            .as_deref()
            .map(|w| format!(", index {w}"))
            .unwrap_or_default()
    );
    println!("best distance: {}", report.best_distance);
    println!(
        "unsatisfied contexts: {} covering {} points",
        report.unsatisfied_contexts, report.covered_points
    );
    if let Some(profiles) = &report.profiles {
        println!("degree profile:");
        if profiles.degree_histogram.is_empty() {
            println!("  (empty)");
        }
        for (degree, count) in &profiles.degree_histogram {
            println!("  degree {degree}: {count} points");
        }
        println!("line classes:");
        if profiles.line_classes.is_empty() {
            println!("  (empty)");
        }
        for entry in &profiles.line_classes {
            let [a, b, c] = entry.class;
            println!("  ({a},{b},{c}): {} contexts", entry.count);
        }
    }
    if let Some(graphs) = &report.graphs {
        println!("graph checks:");
        println!(
            "  whole set: DW(5,2) profile: {}; generalized-hexagon profile: {}",
            graphs.dw52_profile, graphs.hexagon_profile
        );
        for class in &graphs.classes {
            let [a, b, c] = class.class;
            let sizes: Vec<String> = class
                .component_line_counts
                .iter()
                .map(|n| n.to_string())
                .collect();
            println!(
                "  class ({a},{b},{c}): {} lines, {} component(s) of {}",
                class.line_count,
                class.component_line_counts.len(),
                sizes.join(", ")
            );
            if !class.skeletons.is_empty() {
                println!("    skeletons: {}", class.skeletons.join("; "));
            }
            if class.hexagon_component_count > 0 {
                println!(
                    "    generalized-hexagon components: {}",
                    class.hexagon_component_count
                );
            }
        }
    }
    if let Some(restrict) = &report.restrict_criteria {
        println!("restriction criteria:");
        for (kind, entry) in [
            ("elliptic", &restrict.elliptic),
            ("hyperbolic", &restrict.hyperbolic),
        ] {
            println!(
                "  {kind} quadrics: {}/{} satisfy: {}",
                entry.satisfied, entry.total_quadrics, entry.criterion
            );
            let sizes: Vec<String> = entry
                .restriction_sizes
                .iter()
                .map(|(size, count)| format!("{size} x{count}"))
                .collect();
            println!("    restriction sizes: {}", sizes.join(", "));
        }
    }
}
