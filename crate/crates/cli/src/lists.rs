//! Parsers for the comma and semicolon separated list flags.

use anyhow::{anyhow, bail, Result};

pub fn reals(s: &str) -> Result<Vec<f64>> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| anyhow!("{x:?} is not a number")))
        .collect::<Result<Vec<_>>>()?;
    if v.iter().any(|x| x.is_nan()) {
        bail!("NaN in list {s:?}");
    }
    Ok(v)
}

/// `"0,0,0; 1,0,0"` or the compact `"000,100"`.
pub fn derivs(s: &str) -> Result<Vec<[u32; 3]>> {
    let parse_one = |d: &str| -> Result<[u32; 3]> {
        let d = d.trim();
        let parts: Vec<&str> = if d.contains(',') { d.split(',').collect() } else { d.split("").filter(|c| !c.is_empty()).collect() };
        let v = parts
            .iter()
            .map(|x| x.trim().parse::<u32>().map_err(|_| anyhow!("bad multi-index {d:?}")))
            .collect::<Result<Vec<_>>>()?;
        v.try_into().map_err(|_| anyhow!("multi-index {d:?} needs three entries"))
    };
    if s.contains(';') {
        s.split(';').map(parse_one).collect()
    } else if s.split(',').all(|x| x.trim().len() == 3) {
        s.split(',').map(parse_one).collect()
    } else {
        Ok(vec![parse_one(s)?])
    }
}
