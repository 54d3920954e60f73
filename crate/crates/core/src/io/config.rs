use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::kernel::Params;
use crate::solver::{gaussian_amplitude_for_unit_gradient, init_field, InitSpec, RunConfig};
use crate::spectral::Grid;

/// A validated run configuration.
///
/// Text form: one `key = value` per line, `#` starts a comment. Keys are
/// either written in full (`grid.n_x = 48`) or under a `[grid]` header.
/// `seed` lives outside any section.
///
/// | key | default |
/// |---|---|
/// | `grid.n_x n_y n_z l_x l_y l_z` | required |
/// | `params.a kappa` | required |
/// | `params.epsilon` | `(kappa − 1/16)/2` |
/// | `init.kind` | `gaussian` (`single_mode`, `random_band`) |
/// | `init.width` | `l_x/8` |
/// | `init.amplitude` | gaussian: `‖∇φ₀‖_∞ = 1`; otherwise 1 |
/// | `init.mode` | `1,0,0` |
/// | `init.k_min init.k_max` | `0`, `1` |
/// | `time.dt t_end output_every` | `0.05`, `8`, `5` |
/// | `nonlinear.enabled dealias` | `true`, `true` |
/// | `output.dir` | `out` |
/// | `output.snapshot_every` | `0` (none) |
/// | `output.p` | `1,2,inf` |
/// | `output.derivs` | `0,0,0; 1,0,0; 0,1,0; 0,0,1` |
/// | `seed` | `0` |
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub grid: Grid,
    pub params: Params,
    pub init: InitSpec,
    pub dt: f64,
    pub t_end: f64,
    pub output_every: usize,
    pub nonlinear: bool,
    pub dealias: bool,
    pub out_dir: PathBuf,
    pub snapshot_every: usize,
    pub record_p: Vec<f64>,
    pub record_derivs: Vec<[u32; 3]>,
    pub seed: u64,
}

const KEYS: &[&str] = &[
    "grid.n_x", "grid.n_y", "grid.n_z", "grid.l_x", "grid.l_y", "grid.l_z",
    "params.a", "params.kappa", "params.epsilon",
    "init.kind", "init.amplitude", "init.width", "init.mode", "init.k_min", "init.k_max",
    "time.dt", "time.t_end", "time.output_every",
    "nonlinear.enabled", "nonlinear.dealias",
    "output.dir", "output.snapshot_every", "output.p", "output.derivs",
    "seed",
];

struct Entries {
    map: BTreeMap<String, (usize, String)>,
    last_line: usize,
}

impl Entries {
    fn err(line: usize, key: &str, msg: impl Into<String>) -> Error {
        Error::Config { line, key: key.to_string(), msg: msg.into() }
    }

    fn line(&self, key: &str) -> usize {
        self.map.get(key).map_or(self.last_line, |e| e.0)
    }

    fn raw(&self, key: &str) -> Option<(usize, &str)> {
        self.map.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn required<T>(&self, key: &str, parse: impl Fn(&str) -> Option<T>, what: &str) -> Result<T> {
        match self.raw(key) {
            Some((line, v)) => parse(v).ok_or_else(|| Self::err(line, key, format!("expected {what}, got {v:?}"))),
            None => Err(Self::err(self.last_line, key, "missing required key")),
        }
    }

    fn optional<T>(&self, key: &str, parse: impl Fn(&str) -> Option<T>, what: &str) -> Result<Option<T>> {
        match self.raw(key) {
            Some(_) => self.required(key, parse, what).map(Some),
            None => Ok(None),
        }
    }
}

fn real(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| !v.is_nan())
}

fn finite(s: &str) -> Option<f64> {
    real(s).filter(|v| v.is_finite())
}

fn uint(s: &str) -> Option<usize> {
    s.parse().ok()
}

fn boolean(s: &str) -> Option<bool> {
    match s {
        "true" => Some(true),
        "false" => Some(false),
        _ => None,
    }
}

fn p_list(s: &str) -> Option<Vec<f64>> {
    s.split(',').map(|p| real(p.trim())).collect::<Option<Vec<_>>>().filter(|v| !v.is_empty())
}

fn triple<T: std::str::FromStr>(s: &str) -> Option<[T; 3]> {
    let v: Vec<T> = s.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    v.try_into().ok()
}

fn deriv_list(s: &str) -> Option<Vec<[u32; 3]>> {
    s.split(';').map(|d| triple::<u32>(d)).collect::<Option<Vec<_>>>().filter(|v| !v.is_empty())
}

fn tokenize(text: &str) -> Result<Entries> {
    let mut map = BTreeMap::new();
    let mut section: Option<String> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| Entries::err(line_no, line, "unterminated section header"))?
                .trim();
            if !KEYS.iter().any(|k| k.split_once('.').is_some_and(|(s, _)| s == name)) {
                return Err(Entries::err(line_no, name, "unknown section"));
            }
            section = Some(name.to_string());
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Entries::err(line_no, line, "expected key = value"))?;
        let (k, v) = (k.trim(), v.trim());
        // a dotted key is absolute; a bare key belongs to the open section
        let key = match (&section, k.contains('.')) {
            (Some(s), false) if k != "seed" => format!("{s}.{k}"),
            _ => k.to_string(),
        };
        if !KEYS.contains(&key.as_str()) {
            return Err(Entries::err(line_no, &key, "unknown key"));
        }
        if let Some((first, _)) = map.get(&key) {
            return Err(Entries::err(line_no, &key, format!("duplicate key (first set on line {first})")));
        }
        map.insert(key, (line_no, v.to_string()));
    }
    Ok(Entries { map, last_line })
}

/// Parses and validates a configuration. Errors carry the offending key
/// and line; keys that are missing are reported at the last line.
pub fn parse_config(text: &str) -> Result<Config> {
    let e = tokenize(text)?;

    let mut n = [0usize; 3];
    let mut l = [0f64; 3];
    for (a, axis) in ["x", "y", "z"].iter().enumerate() {
        let key = format!("grid.n_{axis}");
        n[a] = e.required(&key, uint, "a positive integer")?;
        if n[a] % 2 != 0 {
            return Err(Entries::err(e.line(&key), &key, format!("n_{axis} must be even")));
        }
        if n[a] < 8 {
            return Err(Entries::err(e.line(&key), &key, format!("n_{axis} must be at least 8")));
        }
        let key = format!("grid.l_{axis}");
        l[a] = e.required(&key, finite, "a real number")?;
        if !(l[a] > 0.0) {
            return Err(Entries::err(e.line(&key), &key, format!("l_{axis} must be positive")));
        }
    }
    let grid = Grid::new(n, l).map_err(|err| Entries::err(e.line("grid.n_x"), "grid", err.to_string()))?;

    let a = e.required("params.a", finite, "a real number")?;
    let kappa = e.required("params.kappa", finite, "a real number")?;
    let epsilon = e.optional("params.epsilon", finite, "a real number")?;
    if a < 0.0 {
        return Err(Entries::err(e.line("params.a"), "params.a", "A must be non-negative"));
    }
    if kappa <= Params::KAPPA_THRESHOLD {
        return Err(Entries::err(
            e.line("params.kappa"),
            "params.kappa",
            format!("kappa = {kappa} violates the global existence hypothesis κ > 1/16 + ε (kappa must exceed 0.0625)"),
        ));
    }
    let params = Params::new(a, kappa, epsilon).map_err(|err| {
        let key = if epsilon.is_some() { "params.epsilon" } else { "params.kappa" };
        Entries::err(e.line(key), key, err.to_string())
    })?;

    let kind = e.optional("init.kind", |s| Some(s.to_string()), "a kind")?.unwrap_or_else(|| "gaussian".into());
    let amplitude = e.optional("init.amplitude", finite, "a real number")?;
    let width = e.optional("init.width", finite, "a real number")?;
    let mode = e.optional("init.mode", triple::<i64>, "three integers")?;
    let k_min = e.optional("init.k_min", finite, "a real number")?;
    let k_max = e.optional("init.k_max", finite, "a real number")?;
    let stray = |keys: &[&str]| -> Result<()> {
        match keys.iter().find(|k| e.raw(k).is_some()) {
            Some(k) => Err(Entries::err(e.line(k), k, format!("not used by init.kind = {kind}"))),
            None => Ok(()),
        }
    };
    let init = match kind.as_str() {
        "gaussian" => {
            stray(&["init.mode", "init.k_min", "init.k_max"])?;
            let width = width.unwrap_or(l[0] / 8.0);
            InitSpec::Gaussian {
                amplitude: amplitude.unwrap_or_else(|| gaussian_amplitude_for_unit_gradient(width)),
                width,
            }
        }
        "single_mode" => {
            stray(&["init.width", "init.k_min", "init.k_max"])?;
            InitSpec::SingleMode { amplitude: amplitude.unwrap_or(1.0), mode: mode.unwrap_or([1, 0, 0]) }
        }
        "random_band" => {
            stray(&["init.width", "init.mode"])?;
            InitSpec::RandomBand {
                amplitude: amplitude.unwrap_or(1.0),
                k_min: k_min.unwrap_or(0.0),
                k_max: k_max.unwrap_or(1.0),
            }
        }
        other => {
            return Err(Entries::err(
                e.line("init.kind"),
                "init.kind",
                format!("unknown kind {other:?} (gaussian, single_mode, random_band)"),
            ))
        }
    };
    let seed = e.optional("seed", |s| s.parse::<u64>().ok(), "an unsigned integer")?.unwrap_or(0);
    // cheap enough to sample once; catches under-resolved widths and bad modes
    if let Err(err) = init_field(&grid, &init, seed) {
        let key = match init {
            InitSpec::Gaussian { .. } => "init.width",
            InitSpec::SingleMode { .. } => "init.mode",
            InitSpec::RandomBand { .. } => "init.k_max",
        };
        return Err(Entries::err(e.line(key), key, err.to_string()));
    }

    let cfg = Config {
        grid,
        params,
        init,
        dt: e.optional("time.dt", finite, "a real number")?.unwrap_or(0.05),
        t_end: e.optional("time.t_end", finite, "a real number")?.unwrap_or(8.0),
        output_every: e.optional("time.output_every", uint, "a positive integer")?.unwrap_or(5),
        nonlinear: e.optional("nonlinear.enabled", boolean, "true or false")?.unwrap_or(true),
        dealias: e.optional("nonlinear.dealias", boolean, "true or false")?.unwrap_or(true),
        out_dir: e.optional("output.dir", |s| Some(PathBuf::from(s)), "a path")?.unwrap_or_else(|| "out".into()),
        snapshot_every: e.optional("output.snapshot_every", uint, "a non-negative integer")?.unwrap_or(0),
        record_p: e.optional("output.p", p_list, "a comma separated list of exponents")?.unwrap_or(vec![1.0, 2.0, f64::INFINITY]),
        record_derivs: e
            .optional("output.derivs", deriv_list, "multi-indices like 1,0,0; 0,1,0")?
            .unwrap_or(vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        seed,
    };
    if let Err(Error::InvalidRun(msg)) = cfg.run_config().validate() {
        let key = if msg.starts_with("dt") {
            "time.dt"
        } else if msg.starts_with("t_end") {
            "time.t_end"
        } else if msg.starts_with("output_every") {
            "time.output_every"
        } else {
            "output.p"
        };
        return Err(Entries::err(e.line(key), key, msg));
    }
    Ok(cfg)
}

impl Config {
    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            dt: self.dt,
            t_end: self.t_end,
            nonlinear: self.nonlinear,
            dealias: self.dealias,
            init: self.init.clone(),
            output_every: self.output_every,
            snapshot_every: self.snapshot_every,
            seed: self.seed,
            record_p: self.record_p.clone(),
            record_derivs: self.record_derivs.clone(),
        }
    }

    /// Sectioned text that parses back to `self`. Floats use the shortest
    /// representation that round-trips.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let n = self.grid.n();
        let l = self.grid.lengths();
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "\n[grid]");
        for (a, axis) in ["x", "y", "z"].iter().enumerate() {
            let _ = writeln!(s, "n_{axis} = {}", n[a]);
        }
        for (a, axis) in ["x", "y", "z"].iter().enumerate() {
            let _ = writeln!(s, "l_{axis} = {:?}", l[a]);
        }
        let p = &self.params;
        let _ = writeln!(s, "\n[params]\na = {:?}\nkappa = {:?}\nepsilon = {:?}", p.a, p.kappa, p.epsilon);
        let _ = writeln!(s, "\n[init]\nkind = {}", self.init.kind());
        match &self.init {
            InitSpec::Gaussian { amplitude, width } => {
                let _ = writeln!(s, "amplitude = {amplitude:?}\nwidth = {width:?}");
            }
            InitSpec::SingleMode { amplitude, mode } => {
                let _ = writeln!(s, "amplitude = {amplitude:?}\nmode = {},{},{}", mode[0], mode[1], mode[2]);
            }
            InitSpec::RandomBand { amplitude, k_min, k_max } => {
                let _ = writeln!(s, "amplitude = {amplitude:?}\nk_min = {k_min:?}\nk_max = {k_max:?}");
            }
        }
        let _ = writeln!(
            s,
            "\n[time]\ndt = {:?}\nt_end = {:?}\noutput_every = {}",
            self.dt, self.t_end, self.output_every
        );
        let _ = writeln!(s, "\n[nonlinear]\nenabled = {}\ndealias = {}", self.nonlinear, self.dealias);
        let ps: Vec<String> = self.record_p.iter().map(|p| format!("{p:?}")).collect();
        let ds: Vec<String> = self.record_derivs.iter().map(|d| format!("{},{},{}", d[0], d[1], d[2])).collect();
        let _ = writeln!(
            s,
            "\n[output]\ndir = {}\nsnapshot_every = {}\np = {}\nderivs = {}",
            self.out_dir.display(),
            self.snapshot_every,
            ps.join(","),
            ds.join("; ")
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
[grid]
n_x = 24
n_y = 24
n_z = 24
l_x = 20.0
l_y = 20.0
l_z = 20.0
[params]
a = 2
kappa = 0.2
";

    fn err_of(text: &str) -> (usize, String, String) {
        match parse_config(text) {
            Err(Error::Config { line, key, msg }) => (line, key, msg),
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_gets_defaults() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.params.epsilon, Params::default_epsilon(0.2));
        assert!(c.dealias && c.nonlinear);
        assert_eq!(c.init, InitSpec::Gaussian { amplitude: gaussian_amplitude_for_unit_gradient(2.5), width: 2.5 });
        assert_eq!(c.seed, 0);
    }

    #[test]
    fn flat_and_sectioned_agree() {
        let flat: String = MINIMAL
            .lines()
            .scan(String::new(), |sec, line| {
                Some(if let Some(s) = line.strip_prefix('[') {
                    *sec = s.trim_end_matches(']').to_string();
                    String::new()
                } else {
                    format!("{sec}.{line}\n")
                })
            })
            .collect();
        assert_eq!(parse_config(&flat).unwrap(), parse_config(MINIMAL).unwrap());
    }

    #[test]
    fn low_kappa_cites_hypothesis() {
        let (line, key, msg) = err_of(&MINIMAL.replace("kappa = 0.2", "kappa = 0.05"));
        assert_eq!((line, key.as_str()), (10, "params.kappa"));
        assert!(msg.contains("κ > 1/16 + ε"), "{msg}");
    }

    #[test]
    fn odd_n_rejected() {
        let (line, key, msg) = err_of(&MINIMAL.replace("n_x = 24", "n_x = 7"));
        assert_eq!((line, key.as_str(), msg.as_str()), (2, "grid.n_x", "n_x must be even"));
    }

    #[test]
    fn unknown_and_bad_values() {
        let (line, key, _) = err_of(&format!("{MINIMAL}colour = red\n"));
        assert_eq!((line, key.as_str()), (11, "params.colour"));
        let (line, key, _) = err_of(&MINIMAL.replace("a = 2", "a = two"));
        assert_eq!((line, key.as_str()), (9, "params.a"));
        let (_, key, msg) = err_of(&MINIMAL.replace("a = 2\n", ""));
        assert_eq!((key.as_str(), msg.as_str()), ("params.a", "missing required key"));
    }

    #[test]
    fn round_trip() {
        let text = format!("{MINIMAL}[init]\nkind = random_band\nk_min = 0.3\nk_max = 1.1\n[output]\np = 2, inf\nderivs = 0,0,0; 2,0,1\nseed = 99\n");
        let c = parse_config(&text).unwrap();
        assert_eq!(c.seed, 99);
        assert_eq!(parse_config(&c.serialize()).unwrap(), c);
        let d = parse_config(MINIMAL).unwrap();
        assert_eq!(parse_config(&d.serialize()).unwrap(), d);
    }
}
