use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};
use tduality::aks::{aks_factors, aks_factors_generic, exp_curve, AksCurve};
use tduality::groups::iwasawa_factorize;
use tduality::{BEl, Mat2C, SU2El, Su2Vec, C64};

use crate::error::{CliError, CliResult};
use crate::output::{self, format_real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct FactorizeArgs {
    /// Row-major entries: 4 reals, or 8 reals as `re,im` pairs.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1, conflicts_with = "curve")]
    pub matrix: Option<Vec<f64>>,
    /// Factorize exp(t L(X)) for the su(2) element given by --x.
    #[arg(long, requires_all = ["x", "t"])]
    pub curve: bool,
    /// Curve datum `a1,a2,a3`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub x: Option<Vec<f64>>,
    /// Curve parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

pub fn parse_matrix(v: &[f64]) -> CliResult<Mat2C> {
    match *v {
        [a, b, c, d] => Ok(Mat2C::from_real(a, b, c, d)),
        [a, ai, b, bi, c, ci, d, di] => {
            Ok(Mat2C::new(C64::new(a, ai), C64::new(b, bi), C64::new(c, ci), C64::new(d, di)))
        }
        _ => Err(CliError::Input(format!("--matrix takes 4 or 8 numbers, got {}", v.len()))),
    }
}

fn reconstruction_error(g: &SU2El, b: &BEl, target: &Mat2C) -> f64 {
    (g.to_matrix() * b.to_matrix()).max_abs_diff(target)
}

fn factor_fields(g: &SU2El, b: &BEl, error: f64) -> Vec<(&'static str, Value)> {
    vec![
        ("alpha", json!([g.alpha.re, g.alpha.im])),
        ("beta", json!([g.beta.re, g.beta.im])),
        ("a", json!(b.a)),
        ("b", json!(b.b)),
        ("c", json!(b.c)),
        ("reconstruction_error", json!(error)),
    ]
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), format_real),
        Value::Array(items) => items.iter().map(text_value).collect::<Vec<_>>().join(" "),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(fields: Vec<(&'static str, Value)>, format: Format) -> Vec<u8> {
    match format {
        Format::Text => {
            let mut s = String::new();
            for (k, v) in &fields {
                s.push_str(&format!("{k} = {}\n", text_value(v)));
            }
            s.into_bytes()
        }
        Format::Json => {
            let obj: Map<String, Value> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            let mut bytes = serde_json::to_vec_pretty(&Value::Object(obj)).expect("finite values");
            bytes.push(b'\n');
            bytes
        }
    }
}

/// Factors of a determinant-one matrix.
pub fn matrix_fields(m: &Mat2C) -> CliResult<Vec<(&'static str, Value)>> {
    let (g, b) = iwasawa_factorize(m).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(factor_fields(&g, &b, reconstruction_error(&g, &b, m)))
}

/// Factors of `exp t L(X)`, compared against the closed form when `det X = 1`.
pub fn curve_fields(x: &Su2Vec, t: f64) -> CliResult<Vec<(&'static str, Value)>> {
    if !t.is_finite() {
        return Err(CliError::Input("--t must be finite".into()));
    }
    let curve = AksCurve::new(*x)?;
    let target = exp_curve(x, t);
    let (gg, bg) = aks_factors_generic(x, t);
    let mut fields = Vec::new();
    if curve.closed_form_valid {
        let (g, b) = aks_factors(x, t)?;
        let agreement = g.max_abs_diff(&gg).max(b.max_abs_diff(&bg));
        fields.push(("path", json!("closed_form")));
        fields.extend(factor_fields(&g, &b, reconstruction_error(&g, &b, &target)));
        fields.push(("generic_reconstruction_error", json!(reconstruction_error(&gg, &bg, &target))));
        fields.push(("closed_form_vs_generic", json!(agreement)));
    } else {
        fields.push(("path", json!("generic")));
        fields.extend(factor_fields(&gg, &bg, reconstruction_error(&gg, &bg, &target)));
    }
    Ok(fields)
}

pub fn run(args: &FactorizeArgs) -> CliResult<()> {
    let fields = if args.curve {
        let v = args.x.as_deref().unwrap_or_default();
        let [a1, a2, a3] = <[f64; 3]>::try_from(v)
            .map_err(|_| CliError::Input(format!("--x takes 3 comma-separated numbers, got {}", v.len())))?;
        curve_fields(&Su2Vec::new(a1, a2, a3), args.t.unwrap_or_default())?
    } else {
        let v = args.matrix.as_deref().ok_or_else(|| CliError::Input("give --matrix or --curve".into()))?;
        matrix_fields(&parse_matrix(v)?)?
    };
    output::emit(None, &render(fields, args.format))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn number(fields: &[(&str, Value)], key: &str) -> f64 {
        fields.iter().find(|(k, _)| *k == key).unwrap().1.as_f64().unwrap()
    }

    #[test]
    fn identity_factors_to_identity() {
        let f = matrix_fields(&Mat2C::identity()).unwrap();
        assert_eq!(number(&f, "a"), 1.0);
        assert_eq!(number(&f, "b"), 0.0);
        assert_eq!(number(&f, "reconstruction_error"), 0.0);
    }

    #[test]
    fn determinant_must_be_one() {
        assert!(matches!(matrix_fields(&Mat2C::from_real(2.0, 0.0, 0.0, 1.0)), Err(CliError::Input(_))));
        assert!(parse_matrix(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn unit_curve_uses_the_closed_form() {
        let f = curve_fields(&Su2Vec::X1, 1.0).unwrap();
        let n = 1.0f64.cosh().sqrt();
        assert!((number(&f, "a") - n).abs() < 1e-12);
        assert!((number(&f, "b") + 1.0f64.sinh() / n).abs() < 1e-12);
        assert!(number(&f, "closed_form_vs_generic") < 1e-11);
    }

    #[test]
    fn non_unit_curve_uses_the_generic_path() {
        let f = curve_fields(&Su2Vec::new(0.0, 0.0, 2.0), 0.5).unwrap();
        assert_eq!(f[0].1, json!("generic"));
        assert!(number(&f, "reconstruction_error") < 1e-12);
    }
}
