//! Run configuration shared by searches and certificate emission.
//!
//! Every knob here is echoed verbatim into emitted certificates so that a
//! re-run from the serialized data reproduces the identical result.

use serde::{Deserialize, Serialize};

/// Search bounds, budgets and the RNG seed used by every randomized step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Seed for every randomized component (equal-degree splitting,
    /// large-input primality rounds, sampling in tests).
    pub seed: u64,
    /// Upper bound for scans over the certificate prime l.
    pub l_max: u64,
    /// Upper bound for scans over the base prime p.
    pub p_max: u64,
    /// Abort symbolic power expansion when an intermediate numerator
    /// exceeds this many bits.
    pub expansion_bit_bound: u64,
    /// Starting precision (bits) for certified complex root isolation.
    pub precision_start: u32,
    /// Pollard-rho iteration budget per split attempt. The default rejects
    /// inputs whose second-largest prime factor exceeds roughly 2^48.
    pub rho_iteration_budget: u64,
    /// Half-width of the coefficient box enumerated when searching for
    /// principal prime generators in a monogenic order.
    pub generator_box: u32,
    /// Worker threads for candidate scans (1 = sequential). Results are
    /// merged smallest-candidate-first, so the answer is schedule-free.
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0x5eed_cafe_f00d_0001,
            l_max: 100_000,
            p_max: 1_000,
            expansion_bit_bound: 1 << 20,
            precision_start: 128,
            rho_iteration_budget: 1 << 25,
            generator_box: 8,
            workers: 1,
        }
    }
}

impl RunConfig {
    /// Parse `key=value` lines; `#` starts a comment, blank lines ignored.
    pub fn apply_kv(&mut self, text: &str) -> Result<(), String> {
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {line:?}"))?;
            let (key, value) = (key.trim(), value.trim());
            let parse = |v: &str| v.parse::<u64>().map_err(|e| format!("{key}: {e}"));
            match key {
                "seed" => self.seed = parse(value)?,
                "l_max" => self.l_max = parse(value)?,
                "p_max" => self.p_max = parse(value)?,
                "expansion_bit_bound" => self.expansion_bit_bound = parse(value)?,
                "precision_start" => self.precision_start = parse(value)? as u32,
                "rho_iteration_budget" => self.rho_iteration_budget = parse(value)?,
                "generator_box" => self.generator_box = parse(value)? as u32,
                "workers" => self.workers = parse(value)? as usize,
                _ => return Err(format!("unknown config key {key:?}")),
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_roundtrip() {
        let mut cfg = RunConfig::default();
        cfg.apply_kv("seed=42\n# comment\nl_max = 777\n").unwrap();
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.l_max, 777);
        assert_eq!(cfg.p_max, RunConfig::default().p_max);
    }

    #[test]
    fn kv_rejects_unknown_key() {
        let mut cfg = RunConfig::default();
        assert!(cfg.apply_kv("bogus=1").is_err());
    }
}
