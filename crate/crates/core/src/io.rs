//! JSON and CSV formats for complexes, operators, spectra and Betti vectors.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::homology::BettiVector;
use crate::matrix::DMatrix;
use crate::operators::OperatorMatrix;
use crate::rational::{format_rational, parse_rational};
use crate::spectra::Spectrum;
use crate::weighted::WeightedComplex;

/// On-disk complex. `absent_vertices` lists vertices that carry a weight but
/// are not 0-faces; `void` marks the complex without even the empty face.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
    pub weights: BTreeMap<String, Value>,
    pub facets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub absent_vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub void: bool,
}

fn weight_value(label: &str, v: &Value) -> Result<crate::rational::Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::BadRational(format!("{label}: {v}"))),
    };
    parse_rational(&text)
}

impl ComplexFile {
    pub fn from_weighted(w: &WeightedComplex) -> ComplexFile {
        let x = &w.complex;
        let labels = x.labels();
        let weights = labels
            .iter()
            .zip(&w.weights)
            .map(|(l, q)| (l.clone(), Value::String(format_rational(q))))
            .collect();
        if x.is_void() {
            return ComplexFile {
                vertices: labels.to_vec(),
                weights,
                facets: Vec::new(),
                absent_vertices: labels.to_vec(),
                void: true,
            };
        }
        let support = x.vertex_support();
        let absent = (0..x.n()).filter(|v| !support.contains(v)).map(|v| labels[v].clone()).collect();
        let facets = x
            .facets()
            .into_iter()
            .map(|f| f.iter().map(|&v| labels[v].clone()).collect())
            .collect();
        ComplexFile { vertices: labels.to_vec(), weights, facets, absent_vertices: absent, void: false }
    }

    pub fn to_weighted(&self) -> Result<WeightedComplex> {
        let labels = self.vertices.clone();
        let mut weights = Vec::with_capacity(labels.len());
        for l in &labels {
            let v = self.weights.get(l).ok_or_else(|| Error::MissingWeight(l.clone()))?;
            weights.push(weight_value(l, v)?);
        }
        if let Some(extra) = self.weights.keys().find(|k| !labels.contains(k)) {
            return Err(Error::UnknownLabel(extra.clone()));
        }
        let complex = if self.void {
            if !self.facets.is_empty() {
                return Err(Error::Format("a void complex cannot list facets".into()));
            }
            Complex::void(labels)?
        } else {
            let pos: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
            let index = |l: &String| pos.get(l.as_str()).copied().ok_or_else(|| Error::UnknownLabel(l.clone()));
            let absent: Vec<usize> = self.absent_vertices.iter().map(index).collect::<Result<_>>()?;
            let mut gens: Vec<Face> = (0..labels.len()).filter(|v| !absent.contains(v)).map(|v| vec![v]).collect();
            for facet in &self.facets {
                let mut f: Face = facet.iter().map(index).collect::<Result<_>>()?;
                if let Some(&v) = f.iter().find(|v| absent.contains(v)) {
                    return Err(Error::Format(format!("absent vertex `{}` appears in a facet", labels[v])));
                }
                f.sort_unstable();
                f.dedup();
                gens.push(f);
            }
            Complex::from_generators(labels, gens)?
        };
        WeightedComplex::new(complex, weights)
    }
}

pub fn parse_complex(text: &str) -> Result<WeightedComplex> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.to_weighted()
}

pub fn write_complex(w: &WeightedComplex) -> String {
    serde_json::to_string_pretty(&ComplexFile::from_weighted(w)).expect("serialisable")
}

fn labelled(x: &Complex, faces: &[Face]) -> Vec<Vec<String>> {
    faces.iter().map(|f| f.iter().map(|&v| x.labels()[v].clone()).collect()).collect()
}

/// {"basis": [[labels]], "entries": [[rational strings]]}.
pub fn operator_json(x: &Complex, m: &OperatorMatrix) -> Value {
    let entries: Vec<Vec<String>> =
        m.entries.to_dense().iter().map(|row| row.iter().map(format_rational).collect()).collect();
    json!({ "basis": labelled(x, &m.row_basis), "entries": entries })
}

/// 17 significant digits.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn matrix_csv(m: &DMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format_f64(m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn spectrum_json(k: isize, operator: &str, s: &Spectrum) -> Value {
    json!({
        "k": k,
        "operator": operator,
        "values": s.values,
        "grouped": s.grouped(),
        "tol": s.tol,
    })
}

pub fn spectrum_csv(s: &Spectrum) -> String {
    let mut out = String::from("index,value\n");
    for (i, v) in s.values.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, format_f64(*v)));
    }
    out
}

/// {"-1": b, "0": b, ...}
pub fn betti_json(b: &BettiVector) -> Value {
    let map: serde_json::Map<String, Value> = b.b.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sphere_boundary;
    use crate::rational::{frac, int};

    const TRI: &str = r#"{"vertices":["a","b","c"],"weights":{"a":"1","b":"1/3","c":0.25},
        "facets":[["a","b"],["b","c"],["a","c"]]}"#;

    #[test]
    fn parses_rationals_and_decimals() {
        let w = parse_complex(TRI).unwrap();
        assert_eq!(w.weights, vec![int(1), frac(1, 3), frac(1, 4)]);
        assert_eq!(w.complex.f_vector(), vec![1, 3, 3]);
    }

    #[test]
    fn round_trip_is_identity() {
        let w = parse_complex(TRI).unwrap();
        let back = parse_complex(&write_complex(&w)).unwrap();
        assert_eq!(back, w);
        let ghost = r#"{"vertices":["a","b","c"],"weights":{"a":"1","b":"2","c":"3"},
            "facets":[["a","b"]],"absent_vertices":["c"]}"#;
        let g = parse_complex(ghost).unwrap();
        assert_eq!(g.complex.f(0), 2);
        assert_eq!(parse_complex(&write_complex(&g)).unwrap(), g);
        let v = WeightedComplex::uniform(Complex::void(Complex::simplex_labels(2)).unwrap());
        assert_eq!(parse_complex(&write_complex(&v)).unwrap(), v);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_complex("{"), Err(Error::Format(_))));
        let neg = TRI.replace("\"1/3\"", "\"-1/3\"");
        assert!(matches!(parse_complex(&neg), Err(Error::NonPositiveWeight(_))));
        let missing = TRI.replace("\"a\":\"1\",", "");
        assert!(matches!(parse_complex(&missing), Err(Error::MissingWeight(_))));
        let unknown = TRI.replace("[\"a\",\"b\"]", "[\"a\",\"z\"]");
        assert!(matches!(parse_complex(&unknown), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn csv_and_json_agree() {
        let w = WeightedComplex::uniform(sphere_boundary(2).unwrap());
        let s = crate::spectra::spectrum_of(&crate::operators::full_laplacian(&w, 1).unwrap(), w.tol()).unwrap();
        let j = spectrum_json(1, "full", &s);
        let csv = spectrum_csv(&s);
        for (line, v) in csv.lines().skip(1).zip(j["values"].as_array().unwrap()) {
            let parsed: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
            assert_eq!(parsed, v.as_f64().unwrap());
        }
    }
}
