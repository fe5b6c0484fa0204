//! Rendering presentations back into the file grammar.

use arcspace::Presentation;

/// One `gen ...;` declaration per generator, in the global order.
/// Base presentations round-trip through the parser; jet presentations
/// reparse with their jet labels read as plain names.
pub fn presentation_file(pres: &Presentation) -> String {
    let mut out = String::new();
    for g in pres.gen_ids() {
        let gen = pres.generator(g);
        out.push_str(&format!(
            "gen {} deg {}",
            gen.display_name(),
            gen.coh_degree()
        ));
        if let Some(iw) = gen.internal_weight() {
            out.push_str(&format!(" iw {iw}"));
        }
        let d = pres.diff(g);
        if !d.is_zero() {
            out.push_str(&format!(" d = {}", pres.polynomial_string(d)));
        }
        out.push_str(";\n");
    }
    out
}
