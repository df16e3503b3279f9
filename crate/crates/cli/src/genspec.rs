//! Compact `name:params` generator specs, e.g. `er:50:0.1` or `dumbbell:25:ring`.

use std::fmt;
use std::str::FromStr;

use netimbalance::generators::{self, ClusterTopology, GeneratorSeed};
use netimbalance::Graph;

pub const GRAMMAR: &str = "complete:N | path:N | ring:N | star:N | er:N:P | ba:N:M | ws:N:K:P | dumbbell:S[:complete|ring|er[:P]]";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenSpec {
    Complete(usize),
    Path(usize),
    Ring(usize),
    Star(usize),
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    BarabasiAlbert {
        n: usize,
        m: usize,
    },
    WattsStrogatz {
        n: usize,
        k: usize,
        p: f64,
    },
    Dumbbell {
        size: usize,
        topology: ClusterTopology,
    },
}

impl GenSpec {
    /// True when building the graph consumes randomness.
    pub fn is_random(&self) -> bool {
        match self {
            GenSpec::ErdosRenyi { .. }
            | GenSpec::BarabasiAlbert { .. }
            | GenSpec::WattsStrogatz { .. } => true,
            GenSpec::Dumbbell { topology, .. } => {
                matches!(topology, ClusterTopology::ErdosRenyi(_))
            }
            _ => false,
        }
    }

    /// Builds the graph; `seed` must be present for random specs.
    pub fn build(&self, seed: Option<u64>) -> Result<Graph, String> {
        let seed = match (self.is_random(), seed) {
            (true, None) => {
                return Err(format!("--seed is required for random generator `{self}`"))
            }
            (_, s) => GeneratorSeed(s.unwrap_or(0)),
        };
        let built = match *self {
            GenSpec::Complete(n) => generators::complete(n),
            GenSpec::Path(n) => generators::path(n),
            GenSpec::Ring(n) => generators::ring(n),
            GenSpec::Star(n) => generators::star(n),
            GenSpec::ErdosRenyi { n, p } => generators::erdos_renyi(n, p, seed),
            GenSpec::BarabasiAlbert { n, m } => generators::barabasi_albert(n, m, seed),
            GenSpec::WattsStrogatz { n, k, p } => generators::watts_strogatz(n, k, p, seed),
            GenSpec::Dumbbell { size, topology } => {
                generators::dumbbell(size, topology, seed).map(|d| d.graph)
            }
        };
        built.map_err(|e| e.to_string())
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Complete(n) => write!(f, "complete:{n}"),
            GenSpec::Path(n) => write!(f, "path:{n}"),
            GenSpec::Ring(n) => write!(f, "ring:{n}"),
            GenSpec::Star(n) => write!(f, "star:{n}"),
            GenSpec::ErdosRenyi { n, p } => write!(f, "er:{n}:{p}"),
            GenSpec::BarabasiAlbert { n, m } => write!(f, "ba:{n}:{m}"),
            GenSpec::WattsStrogatz { n, k, p } => write!(f, "ws:{n}:{k}:{p}"),
            GenSpec::Dumbbell { size, topology } => match topology {
                ClusterTopology::Complete => write!(f, "dumbbell:{size}:complete"),
                ClusterTopology::Ring => write!(f, "dumbbell:{size}:ring"),
                ClusterTopology::ErdosRenyi(p) => write!(f, "dumbbell:{size}:er:{p}"),
            },
        }
    }
}

fn field<T: FromStr>(parts: &[&str], i: usize, what: &str) -> Result<T, String> {
    let raw = parts.get(i).ok_or_else(|| format!("missing {what}"))?;
    raw.parse().map_err(|_| format!("bad {what} `{raw}`"))
}

impl FromStr for GenSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let arity = |want: usize| {
            if parts.len() == want {
                Ok(())
            } else {
                Err(format!(
                    "`{s}` has {} fields, expected {want}; grammar: {GRAMMAR}",
                    parts.len()
                ))
            }
        };
        let spec = match parts[0] {
            "complete" | "path" | "ring" | "star" => {
                arity(2)?;
                let n = field(&parts, 1, "node count")?;
                match parts[0] {
                    "complete" => GenSpec::Complete(n),
                    "path" => GenSpec::Path(n),
                    "ring" => GenSpec::Ring(n),
                    _ => GenSpec::Star(n),
                }
            }
            "er" => {
                arity(3)?;
                GenSpec::ErdosRenyi {
                    n: field(&parts, 1, "node count")?,
                    p: field(&parts, 2, "probability")?,
                }
            }
            "ba" => {
                arity(3)?;
                GenSpec::BarabasiAlbert {
                    n: field(&parts, 1, "node count")?,
                    m: field(&parts, 2, "attachment count")?,
                }
            }
            "ws" => {
                arity(4)?;
                GenSpec::WattsStrogatz {
                    n: field(&parts, 1, "node count")?,
                    k: field(&parts, 2, "lattice degree")?,
                    p: field(&parts, 3, "rewiring probability")?,
                }
            }
            "dumbbell" => {
                let size = field(&parts, 1, "cluster size")?;
                let topology = match parts.get(2).copied() {
                    None => ClusterTopology::default(),
                    Some("complete") if parts.len() == 3 => ClusterTopology::Complete,
                    Some("ring") if parts.len() == 3 => ClusterTopology::Ring,
                    Some("er") if parts.len() == 3 => ClusterTopology::default(),
                    Some("er") if parts.len() == 4 => {
                        ClusterTopology::ErdosRenyi(field(&parts, 3, "cluster probability")?)
                    }
                    Some(_) => return Err(format!("bad dumbbell spec `{s}`; grammar: {GRAMMAR}")),
                };
                GenSpec::Dumbbell { size, topology }
            }
            other => return Err(format!("unknown generator `{other}`; grammar: {GRAMMAR}")),
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        assert_eq!("complete:50".parse(), Ok(GenSpec::Complete(50)));
        assert_eq!(
            "er:50:0.1".parse(),
            Ok(GenSpec::ErdosRenyi { n: 50, p: 0.1 })
        );
        assert_eq!(
            "ws:50:4:0.1".parse(),
            Ok(GenSpec::WattsStrogatz {
                n: 50,
                k: 4,
                p: 0.1
            })
        );
        assert_eq!(
            "dumbbell:25".parse(),
            Ok(GenSpec::Dumbbell {
                size: 25,
                topology: ClusterTopology::ErdosRenyi(0.15)
            })
        );
        assert_eq!(
            "dumbbell:25:er:0.3".parse(),
            Ok(GenSpec::Dumbbell {
                size: 25,
                topology: ClusterTopology::ErdosRenyi(0.3)
            })
        );
        assert_eq!(
            "dumbbell:25:ring".parse(),
            Ok(GenSpec::Dumbbell {
                size: 25,
                topology: ClusterTopology::Ring
            })
        );
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in [
            "",
            "er:50",
            "er:50:x",
            "ws:50:4",
            "hex:5",
            "complete:5:1",
            "dumbbell:25:grid",
        ] {
            assert!(bad.parse::<GenSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn random_specs_need_a_seed() {
        let er: GenSpec = "er:20:0.2".parse().unwrap();
        assert!(er.build(None).is_err());
        assert_eq!(er.build(Some(4)), er.build(Some(4)));
        let ring: GenSpec = "dumbbell:5:ring".parse().unwrap();
        assert!(ring.build(None).is_ok());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "star:7",
            "ba:30:2",
            "ws:20:4:0.5",
            "dumbbell:6:complete",
            "dumbbell:6:er:0.4",
        ] {
            assert_eq!(s.parse::<GenSpec>().unwrap().to_string(), s);
        }
    }
}
