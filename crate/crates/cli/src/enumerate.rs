use elemsub::chevalley::Scope;
use elemsub::elementary::{
    brute_force_eu, g2_normal_forms, group_generators, orbit_decompose, Ambient, ElementarySubalgebra, GeneratorSet,
};
use elemsub::rootsys::Family;
use elemsub::Error;
use serde_json::json;

use crate::verify::named_normal_forms;
use crate::{Status, Target};

pub fn run(target: &Target, dim: usize) -> Result<Status, Error> {
    let (sys, field) = target.resolve()?;
    if dim == 0 || dim > sys.num_positive() {
        return Err(Error::Unsupported(format!("dimension must lie in 1..={}", sys.num_positive())));
    }
    let amb = Ambient::new(&sys, &field);
    let points = brute_force_eu(&amb, dim, target.budget)?;
    let named = normal_forms(&amb, dim)?;
    let gens = group_generators(&amb, GeneratorSet::Minimal);
    let report = orbit_decompose(&amb, &points, &gens, &named)?;
    for (k, o) in report.orbits.iter().enumerate() {
        let line = json!({
            "orbit": k,
            "type": sys.name(),
            "field": field.id().to_string(),
            "dim": dim,
            "size": o.size,
            "u_points": o.u_points,
            "normalizer_dim": o.normalizer_dim,
            "normalizer_constant": o.normalizer_constant,
            "normal_form": o.normal_form_tag,
            "representative": amb.format_rows(&o.representative.rows, Scope::U),
            "leading_terms": o.representative.leads.iter().map(|&a| sys.root_label(a)).collect::<Vec<_>>(),
        });
        println!("{line}");
    }
    eprintln!("{} points, {} orbits", report.points, report.orbits.len());
    Ok(Status::Pass)
}

/// Named subalgebras used to tag orbits.
fn normal_forms(amb: &Ambient, dim: usize) -> Result<Vec<(String, ElementarySubalgebra)>, Error> {
    let sys = amb.system();
    if sys.label().is_some_and(|l| l.family == Family::G) && amb.field().p() >= 5 && dim == 3 {
        return g2_normal_forms(amb);
    }
    Ok(named_normal_forms(amb).into_iter().filter(|(_, e)| e.dim() == dim).collect())
}
