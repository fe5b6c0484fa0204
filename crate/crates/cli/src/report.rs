//! Machine-readable reports. One JSON document per invocation; rerunning
//! the same command on the same input yields byte-identical output.

use arcspace::{
    BiSeries, ClassicalityReport, ColumnRange, GradedComparison, PiEntry, Presentation, Scalar,
    WeakSmoothness, Weighting,
};
use serde::Serialize;

pub const SCHEMA: &str = "arcspace-report/1";

pub fn engine_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

/// FNV-1a hash of the input text, hex-encoded.
pub fn digest(text: &str) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a64:{h:016x}")
}

#[derive(Serialize, Default)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iw: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wmax: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iwmax: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qmax: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zmax: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conv: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeff_conv: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pochhammer: Option<String>,
}

#[derive(Serialize)]
pub struct GenRow {
    pub name: String,
    pub deg: i32,
    pub weight: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iw: Option<i64>,
    pub d: String,
}

#[derive(Serialize)]
pub struct ValidationSection {
    pub valid: bool,
    pub generators: usize,
    pub graded: bool,
}

#[derive(Serialize)]
pub struct ArcSection {
    pub level: u32,
    pub generators: Vec<GenRow>,
}

#[derive(Serialize)]
pub struct DimRow {
    pub i: u32,
    pub w: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iw: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    pub dim: usize,
}

#[derive(Serialize)]
pub struct WitnessRow {
    pub i: u32,
    pub w: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iw: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    pub dim: usize,
    pub class: String,
}

#[derive(Serialize)]
pub struct BoundRow {
    pub w: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iw: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    pub i_max: u32,
}

#[derive(Serialize)]
pub struct ClassicalitySection {
    pub level: u32,
    pub wmax: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iwmax: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    pub classical_in_range: bool,
    pub entries: Vec<DimRow>,
    pub column_bounds: Vec<BoundRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRow>,
}

#[derive(Serialize)]
pub struct WeakSmoothSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iwmax: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    pub weakly_smooth_in_range: bool,
    pub entries: Vec<DimRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRow>,
}

#[derive(Serialize)]
pub struct DegenerationSection {
    pub level: u32,
    pub convention: String,
    pub wmax: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iwmax: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    pub pieces_checked: usize,
    pub dims_match: bool,
    pub differentials_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<String>,
}

#[derive(Serialize)]
pub struct PochhammerSection {
    pub sign: String,
    pub z_exp: u32,
    pub factors: u32,
    pub series: Vec<Vec<String>>,
    pub matches: bool,
}

#[derive(Serialize)]
pub struct EulerSection {
    pub level: u32,
    pub qmax: u32,
    pub zmax: u32,
    pub convention: String,
    pub free_series: Vec<Vec<String>>,
    pub census_series: Vec<Vec<String>>,
    pub cohomology_series: Vec<Vec<String>>,
    pub triple_agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pochhammer: Option<PochhammerSection>,
}

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub engine_version: String,
    pub command: String,
    pub input_digest: String,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc: Option<ArcSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classicality: Option<ClassicalitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_smoothness: Option<WeakSmoothSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneration: Option<DegenerationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerSection>,
}

impl Report {
    pub fn new(command: &str, input: &str, params: Params) -> Self {
        Report {
            schema: SCHEMA,
            engine_version: engine_version(),
            command: command.to_string(),
            input_digest: digest(input),
            params,
            validation: None,
            arc: None,
            classicality: None,
            weak_smoothness: None,
            degeneration: None,
            euler: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }
}

fn weighting_fields(w: &Weighting) -> (Option<i64>, Option<u32>) {
    match w {
        Weighting::Internal(iw) => (Some(*iw), None),
        Weighting::Cap(c) => (None, Some(*c)),
    }
}

pub fn range_fields(r: &ColumnRange) -> (Option<i64>, Option<u32>) {
    match r {
        ColumnRange::InternalUpTo(m) => (Some(*m), None),
        ColumnRange::Cap(c) => (None, Some(*c)),
    }
}

pub fn dim_row(e: &PiEntry) -> DimRow {
    let (iw, cap) = weighting_fields(&e.weighting);
    DimRow {
        i: e.i,
        w: e.w,
        iw,
        cap,
        dim: e.dim,
    }
}

pub fn series_grid<C: Scalar>(s: &BiSeries<C>) -> Vec<Vec<String>> {
    (0..=s.qmax())
        .map(|w| (0..=s.zmax()).map(|m| s.coeff(w, m).to_string()).collect())
        .collect()
}

pub fn validation_section(pres: &Presentation) -> ValidationSection {
    ValidationSection {
        valid: pres.check().is_valid(),
        generators: pres.num_generators(),
        graded: pres.is_graded(),
    }
}

pub fn arc_section(level: u32, pres: &Presentation) -> ArcSection {
    let generators = pres
        .gen_ids()
        .map(|g| {
            let gen = pres.generator(g);
            GenRow {
                name: gen.display_name(),
                deg: gen.coh_degree(),
                weight: gen.conformal_weight(),
                iw: gen.internal_weight(),
                d: pres.polynomial_string(pres.diff(g)),
            }
        })
        .collect();
    ArcSection { level, generators }
}

pub fn classicality_section(report: &ClassicalityReport) -> ClassicalitySection {
    let (iwmax, cap) = range_fields(&report.range);
    let pres = report.arc.presentation();
    ClassicalitySection {
        level: report.level(),
        wmax: report.w_max,
        iwmax,
        cap,
        classical_in_range: report.classical_in_range,
        entries: report.entries.iter().map(dim_row).collect(),
        column_bounds: report
            .column_bounds
            .iter()
            .map(|b| {
                let (iw, cap) = weighting_fields(&b.weighting);
                BoundRow {
                    w: b.w,
                    iw,
                    cap,
                    i_max: b.i_max,
                }
            })
            .collect(),
        witness: report.witness.as_ref().map(|(e, class)| {
            let (iw, cap) = weighting_fields(&e.weighting);
            WitnessRow {
                i: e.i,
                w: e.w,
                iw,
                cap,
                dim: e.dim,
                class: pres.polynomial_string(class),
            }
        }),
    }
}

pub fn weak_smooth_section(result: &WeakSmoothness) -> WeakSmoothSection {
    let (iwmax, cap) = range_fields(&result.range);
    let pres = result.complex.presentation();
    WeakSmoothSection {
        iwmax,
        cap,
        weakly_smooth_in_range: result.weakly_smooth_in_range(),
        entries: result.entries.iter().map(dim_row).collect(),
        witness: result.witness.as_ref().map(|(e, class)| {
            let (iw, cap) = weighting_fields(&e.weighting);
            WitnessRow {
                i: e.i,
                w: e.w,
                iw,
                cap,
                dim: e.dim,
                class: pres.polynomial_string(class),
            }
        }),
    }
}

pub fn degeneration_section(cmp: &GradedComparison) -> DegenerationSection {
    let (iwmax, cap) = range_fields(&cmp.range);
    DegenerationSection {
        level: cmp.level,
        convention: cmp.convention.to_string(),
        wmax: cmp.w_max,
        iwmax,
        cap,
        pieces_checked: cmp.pieces_checked,
        dims_match: cmp.dims_match,
        differentials_match: cmp.differentials_match,
        first_mismatch: cmp.first_mismatch.clone(),
    }
}
