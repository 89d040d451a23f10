//! Reading matrices and JSON documents from arguments, files or stdin.

use std::fs;
use std::io::Read;

use gfan_core::json::{exchange_matrix_from_json, extended_matrix_from_json, rows_from_json};
use gfan_core::{ExchangeMatrix, ExtendedMatrix};
use serde_json::Value;

use crate::Failure;

/// Inline text, `@path`, or standard input when absent or `-`.
pub fn read_source(arg: Option<&str>) -> Result<String, Failure> {
    match arg {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::invalid(format!("cannot read standard input: {e}")))?;
            Ok(buf)
        }
        Some(s) if s.starts_with('@') => fs::read_to_string(&s[1..])
            .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", &s[1..]))),
        Some(s) => Ok(s.to_string()),
    }
}

pub fn json(arg: Option<&str>) -> Result<Value, Failure> {
    parse(&read_source(arg)?)
}

fn parse(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::invalid(format!("invalid JSON: {e}")))
}

pub enum MatrixInput {
    Exchange(ExchangeMatrix),
    Extended(ExtendedMatrix),
}

impl MatrixInput {
    /// An `n x n` array or `{"n", "b"}` object is an exchange matrix; a
    /// `2n x n` array or `{"n", "c"}` object is an extended matrix.
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let v = parse(text)?;
        if v.get("c").is_some() {
            return Ok(MatrixInput::Extended(extended_matrix_from_json(&v)?));
        }
        if v.is_array() {
            let m = rows_from_json(&v)?;
            if m.rows() != m.cols() {
                return Ok(MatrixInput::Extended(ExtendedMatrix::new(m)?));
            }
        }
        Ok(MatrixInput::Exchange(exchange_matrix_from_json(&v)?))
    }

    pub fn exchange(arg: Option<&str>) -> Result<ExchangeMatrix, Failure> {
        exchange_matrix_from_json(&json(arg)?).map_err(Failure::from)
    }
}
