//! Plain-text matrices: a header line `p n`, then one row per line.
//! Several blocks may share a file, separated by blank lines.

use super::field::Field;
use super::flag::Flag;
use super::matrix::Matrix;
use super::subspace::Subspace;
use crate::error::{Error, Result};

pub fn write_block(m: &Matrix) -> String {
    let mut s = format!("{} {}\n", m.field().p(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn write_blocks(ms: &[Matrix]) -> String {
    ms.iter().map(write_block).collect::<Vec<_>>().join("\n")
}

pub fn write_flag(fl: &Flag) -> String {
    let m = Matrix::from_rows(fl.field(), fl.ambient(), &fl.basis());
    write_block(&m)
}

pub fn write_subspace(s: &Subspace) -> String {
    write_block(s.basis())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_blocks(text: &str) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    let mut cur: Option<(Field, usize, Vec<Vec<u32>>)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if let Some((f, n, rows)) = cur.take() {
                out.push(Matrix::from_rows(f, n, &rows));
            }
            continue;
        }
        let nums: Vec<i64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| parse_err(line_no, format!("bad integer {t:?}")))
            })
            .collect::<Result<_>>()?;
        match cur.as_mut() {
            None => {
                if nums.len() != 2 || nums[0] < 0 || nums[1] < 0 {
                    return Err(parse_err(line_no, "header must be `p n`"));
                }
                let p = u32::try_from(nums[0]).map_err(|_| parse_err(line_no, "p out of range"))?;
                let field = Field::new(p)?;
                cur = Some((field, nums[1] as usize, Vec::new()));
            }
            Some((f, n, rows)) => {
                if nums.len() != *n {
                    return Err(parse_err(
                        line_no,
                        format!("row has {} entries, expected {}", nums.len(), n),
                    ));
                }
                rows.push(nums.iter().map(|&x| f.from_i64(x)).collect());
            }
        }
    }
    if let Some((f, n, rows)) = cur.take() {
        out.push(Matrix::from_rows(f, n, &rows));
    }
    Ok(out)
}

pub fn parse_flag(m: &Matrix) -> Result<Flag> {
    Flag::from_matrix(m)
}

pub fn read_blocks(path: &std::path::Path) -> Result<Vec<Matrix>> {
    parse_blocks(&std::fs::read_to_string(path)?)
}
