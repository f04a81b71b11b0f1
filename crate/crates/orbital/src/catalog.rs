//! Catalog of irreducible Riemannian symmetric spaces of noncompact type
//! with their restricted root data.
//!
//! Each entry records the Cartan class, the restricted root system, the
//! root multiplicities in the storage convention of the classification
//! tables (three slots: the `e_i +- e_j` slot, then the two slots for the
//! shorter/longer extra roots), and the dimension of `G/K`.  The
//! structural identity `dim G/K = rank + sum of all root multiplicities`
//! is checked for every row by the test suite.

use crate::rootsys::{Family, LieType, MultClass, RootError};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("class {class} requires parameter n >= {min}, got {got}")]
    BadN { class: CartanClass, min: usize, got: usize },
    #[error("class {class} requires p >= n, got p = {p}, n = {n}")]
    BadP { class: CartanClass, p: usize, n: usize },
    #[error("class {class} takes no parameters")]
    NoParams { class: CartanClass },
    #[error("class {class} requires parameter {name}")]
    MissingParam { class: CartanClass, name: &'static str },
    #[error("no entry of class {class} has restricted rank {rank}")]
    BadRank { class: CartanClass, rank: usize },
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Cartan class labels of the irreducible families and the twelve
/// exceptional spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CartanClass {
    AI,
    AII,
    AIII,
    BDI,
    CI,
    CII,
    DIIIEven,
    DIIIOdd,
    EI,
    EII,
    EIII,
    EIV,
    EV,
    EVI,
    EVII,
    EVIII,
    EIX,
    FI,
    FII,
    G,
}

impl CartanClass {
    pub const ALL: [CartanClass; 20] = [
        CartanClass::AI,
        CartanClass::AII,
        CartanClass::AIII,
        CartanClass::BDI,
        CartanClass::CI,
        CartanClass::CII,
        CartanClass::DIIIEven,
        CartanClass::DIIIOdd,
        CartanClass::EI,
        CartanClass::EII,
        CartanClass::EIII,
        CartanClass::EIV,
        CartanClass::EV,
        CartanClass::EVI,
        CartanClass::EVII,
        CartanClass::EVIII,
        CartanClass::EIX,
        CartanClass::FI,
        CartanClass::FII,
        CartanClass::G,
    ];

    /// Parses the CLI spelling of the class label.
    pub fn parse(s: &str) -> Option<CartanClass> {
        let c = match s.to_ascii_uppercase().as_str() {
            "AI" => CartanClass::AI,
            "AII" => CartanClass::AII,
            "AIII" => CartanClass::AIII,
            "BDI" => CartanClass::BDI,
            "CI" => CartanClass::CI,
            "CII" => CartanClass::CII,
            "DIII-EVEN" => CartanClass::DIIIEven,
            "DIII-ODD" => CartanClass::DIIIOdd,
            "EI" => CartanClass::EI,
            "EII" => CartanClass::EII,
            "EIII" => CartanClass::EIII,
            "EIV" => CartanClass::EIV,
            "EV" => CartanClass::EV,
            "EVI" => CartanClass::EVI,
            "EVII" => CartanClass::EVII,
            "EVIII" => CartanClass::EVIII,
            "EIX" => CartanClass::EIX,
            "FI" => CartanClass::FI,
            "FII" => CartanClass::FII,
            "G" => CartanClass::G,
            _ => return None,
        };
        Some(c)
    }

    /// True for the classes parametrized by `n` (and possibly `p`).
    pub fn is_family(self) -> bool {
        matches!(
            self,
            CartanClass::AI
                | CartanClass::AII
                | CartanClass::AIII
                | CartanClass::BDI
                | CartanClass::CI
                | CartanClass::CII
                | CartanClass::DIIIEven
                | CartanClass::DIIIOdd
        )
    }
}

impl fmt::Display for CartanClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanClass::AI => "AI",
            CartanClass::AII => "AII",
            CartanClass::AIII => "AIII",
            CartanClass::BDI => "BDI",
            CartanClass::CI => "CI",
            CartanClass::CII => "CII",
            CartanClass::DIIIEven => "DIII-even",
            CartanClass::DIIIOdd => "DIII-odd",
            CartanClass::EI => "EI",
            CartanClass::EII => "EII",
            CartanClass::EIII => "EIII",
            CartanClass::EIV => "EIV",
            CartanClass::EV => "EV",
            CartanClass::EVI => "EVI",
            CartanClass::EVII => "EVII",
            CartanClass::EVIII => "EVIII",
            CartanClass::EIX => "EIX",
            CartanClass::FI => "FI",
            CartanClass::FII => "FII",
            CartanClass::G => "G",
        };
        f.write_str(s)
    }
}

/// Restricted-root multiplicities in storage order.
///
/// `eta` holds three slots.  For the classical families `eta[0]` is the
/// multiplicity of the `e_i +- e_j` roots; `eta[1]` and `eta[2]` hold the
/// remaining multiplicities exactly as the classification tables list
/// them, and [`SpaceDescriptor::mult_for_class`] maps them onto root
/// classes per family.  For two-length exceptional systems `eta[0]` is
/// the long-root and `eta[1]` the short-root multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mults {
    pub eta: [u32; 3],
}

impl Mults {
    const fn new(a: u32, b: u32, c: u32) -> Mults {
        Mults { eta: [a, b, c] }
    }
}

/// One catalog row: a symmetric space with its restricted root data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceDescriptor {
    pub cartan_class: CartanClass,
    pub lie_type: LieType,
    /// `n` parameter of the family (absent for the exceptional rows).
    pub n: Option<usize>,
    /// `p` parameter where the family has one (AIII, CII, BDI).
    pub p: Option<usize>,
    pub mults: Mults,
    pub dim: u64,
}

impl SpaceDescriptor {
    /// Multiplicity attached to a root of the given class.
    ///
    /// Mapping per restricted family:
    /// * A, D, E: every root is a `Pair`/`Long` with multiplicity `eta[0]`.
    /// * B_n: `Pair -> eta[0]`, `Single -> eta[1] + eta[2]`.
    /// * C_n: `Pair -> eta[0]`, `Double -> eta[1] + eta[2]`.
    /// * BC_n: `Pair -> eta[0]`, `Single -> eta[1]`, `Double -> eta[2]`.
    /// * G2 and equal-multiplicity F4: uniform `eta[0]`.
    /// * Two-multiplicity F4 rows: `Long -> eta[0]`, `Short -> eta[1]`.
    pub fn mult_for_class(&self, class: MultClass) -> u32 {
        let [a, b, c] = self.mults.eta;
        match (self.lie_type.family, class) {
            (Family::A | Family::D, MultClass::Pair) => a,
            (Family::B, MultClass::Pair) => a,
            (Family::B, MultClass::Single) => b + c,
            (Family::C, MultClass::Pair) => a,
            (Family::C, MultClass::Double) => b + c,
            (Family::BC, MultClass::Pair) => a,
            (Family::BC, MultClass::Single) => b,
            (Family::BC, MultClass::Double) => c,
            (Family::G2, _) => a,
            (Family::F4, MultClass::Long) => a,
            (Family::F4, MultClass::Short) => {
                if b == 0 {
                    a
                } else {
                    b
                }
            }
            (Family::E6 | Family::E7 | Family::E8, MultClass::Long) => a,
            _ => panic!(
                "class {class} does not occur in restricted system {}",
                self.lie_type
            ),
        }
    }

    /// Sum of multiplicities over all positive roots.
    pub fn total_multiplicity(&self) -> u64 {
        crate::rootsys::positive_roots(self.lie_type)
            .iter()
            .map(|r| self.mult_for_class(r.mult_class) as u64)
            .sum()
    }

    /// Checks `dim G/K = rank + sum of multiplicities` for this row.
    pub fn dimension_identity_holds(&self) -> bool {
        self.dim == self.lie_type.rank as u64 + self.total_multiplicity()
    }

    /// JSON object describing the row.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "class": self.cartan_class.to_string(),
            "root_system": self.lie_type.to_string(),
            "family": self.lie_type.family.to_string(),
            "rank": self.lie_type.rank,
            "n": self.n,
            "p": self.p,
            "mults": self.mults.eta,
            "dim": self.dim,
        })
    }
}

/// Looks up a catalog row by class and table parameters.
///
/// `n` is the table parameter of the family (for AI and AII the group
/// parameter, so the restricted rank is `n - 1`; for the other families
/// `n` is the rank).  `p` is required for AIII, CII, BDI and must satisfy
/// `p >= n`.  Exceptional classes take no parameters.
pub fn lookup(
    class: CartanClass,
    n: Option<usize>,
    p: Option<usize>,
) -> Result<SpaceDescriptor, CatalogError> {
    use CartanClass as C;
    let need_n = |min: usize| -> Result<usize, CatalogError> {
        let n = n.ok_or(CatalogError::MissingParam { class, name: "n" })?;
        if n < min {
            return Err(CatalogError::BadN { class, min, got: n });
        }
        Ok(n)
    };
    let need_p = |n: usize| -> Result<usize, CatalogError> {
        let p = p.ok_or(CatalogError::MissingParam { class, name: "p" })?;
        if p < n {
            return Err(CatalogError::BadP { class, p, n });
        }
        Ok(p)
    };
    if !class.is_family() && (n.is_some() || p.is_some()) {
        return Err(CatalogError::NoParams { class });
    }
    if class.is_family() && p.is_some() && !matches!(class, C::AIII | C::CII | C::BDI) {
        return Err(CatalogError::NoParams { class });
    }
    let row = match class {
        C::AI => {
            // SL(n,R)/SO(n), restricted system A_{n-1}, all mults 1.
            let n = need_n(2)?;
            SpaceDescriptor {
                cartan_class: class,
                lie_type: LieType::new(Family::A, n - 1)?,
                n: Some(n),
                p: None,
                mults: Mults::new(1, 0, 0),
                dim: ((n - 1) * (n + 2) / 2) as u64,
            }
        }
        C::AII => {
            // SU*(2n)/Sp(n), restricted system A_{n-1}, all mults 4.
            let n = need_n(2)?;
            SpaceDescriptor {
                cartan_class: class,
                lie_type: LieType::new(Family::A, n - 1)?,
                n: Some(n),
                p: None,
                mults: Mults::new(4, 0, 0),
                dim: ((n - 1) * (2 * n + 1)) as u64,
            }
        }
        C::AIII => {
            // SU(p,n)/S(U(p) x U(n)): BC_n when p > n, C_n when p = n.
            let n = need_n(1)?;
            let p = need_p(n)?;
            let ty = if p > n {
                LieType::new(Family::BC, n)?
            } else {
                LieType::new(Family::C, n)?
            };
            SpaceDescriptor {
                cartan_class: class,
                lie_type: ty,
                n: Some(n),
                p: Some(p),
                mults: Mults::new(2, 1, 2 * (p - n) as u32),
                dim: (2 * p * n) as u64,
            }
        }
        C::BDI => {
            // SO_0(p,n)/SO(p) x SO(n): B_n when p > n, D_n when p = n.
            let n = need_n(2)?;
            let p = need_p(n)?;
            let ty = if p > n {
                LieType::new(Family::B, n)?
            } else {
                LieType::new(Family::D, n)?
            };
            SpaceDescriptor {
                cartan_class: class,
                lie_type: ty,
                n: Some(n),
                p: Some(p),
                mults: Mults::new(1, 0, (p - n) as u32),
                dim: (p * n) as u64,
            }
        }
        C::CI => {
            // Sp(n,R)/U(n), restricted system C_n.
            let n = need_n(2)?;
            SpaceDescriptor {
                cartan_class: class,
                lie_type: LieType::new(Family::C, n)?,
                n: Some(n),
                p: None,
                mults: Mults::new(1, 1, 0),
                dim: (n * (n + 1)) as u64,
            }
        }
        C::CII => {
            // Sp(p,n)/Sp(p) x Sp(n): BC_n when p > n, C_n when p = n.
            let n = need_n(1)?;
            let p = need_p(n)?;
            let ty = if p > n {
                LieType::new(Family::BC, n)?
            } else {
                LieType::new(Family::C, n)?
            };
            SpaceDescriptor {
                cartan_class: class,
                lie_type: ty,
                n: Some(n),
                p: Some(p),
                mults: Mults::new(4, 3, 4 * (p - n) as u32),
                dim: (4 * p * n) as u64,
            }
        }
        C::DIIIEven => {
            // SO*(4n)/U(2n), restricted system C_n.
            let n = need_n(2)?;
            SpaceDescriptor {
                cartan_class: class,
                lie_type: LieType::new(Family::C, n)?,
                n: Some(n),
                p: None,
                mults: Mults::new(4, 1, 0),
                dim: (2 * n * (2 * n - 1)) as u64,
            }
        }
        C::DIIIOdd => {
            // SO*(4n+2)/U(2n+1), restricted system BC_n.
            let n = need_n(1)?;
            SpaceDescriptor {
                cartan_class: class,
                lie_type: LieType::new(Family::BC, n)?,
                n: Some(n),
                p: None,
                mults: Mults::new(4, 1, 4),
                dim: (2 * n * (2 * n + 1)) as u64,
            }
        }
        C::EI => fixed(class, Family::E6, 6, Mults::new(1, 0, 0), 42),
        C::EII => fixed(class, Family::F4, 4, Mults::new(1, 2, 0), 40),
        C::EIII => fixed(class, Family::BC, 2, Mults::new(8, 6, 1), 32),
        C::EIV => fixed(class, Family::A, 2, Mults::new(8, 0, 0), 26),
        C::EV => fixed(class, Family::E7, 7, Mults::new(1, 0, 0), 70),
        C::EVI => fixed(class, Family::F4, 4, Mults::new(1, 4, 0), 64),
        C::EVII => fixed(class, Family::C, 3, Mults::new(8, 1, 0), 54),
        C::EVIII => fixed(class, Family::E8, 8, Mults::new(1, 0, 0), 128),
        C::EIX => fixed(class, Family::F4, 4, Mults::new(8, 1, 0), 112),
        C::FI => fixed(class, Family::F4, 4, Mults::new(1, 0, 0), 28),
        C::FII => fixed(class, Family::BC, 1, Mults::new(0, 8, 7), 16),
        C::G => fixed(class, Family::G2, 2, Mults::new(1, 0, 0), 8),
    };
    Ok(row)
}

fn fixed(class: CartanClass, family: Family, rank: usize, mults: Mults, dim: u64) -> SpaceDescriptor {
    SpaceDescriptor {
        cartan_class: class,
        lie_type: LieType::new(family, rank).expect("fixed rows are valid"),
        n: None,
        p: None,
        mults,
        dim,
    }
}

/// Looks up a row by restricted rank rather than by table parameter:
/// convenient for the command line.  For AI and AII this passes
/// `n = rank + 1`; for the other families `n = rank`.
pub fn lookup_by_rank(
    class: CartanClass,
    rank: Option<usize>,
    p: Option<usize>,
) -> Result<SpaceDescriptor, CatalogError> {
    if !class.is_family() {
        if let Some(rank) = rank {
            let row = lookup(class, None, p)?;
            if row.lie_type.rank != rank {
                return Err(CatalogError::BadRank { class, rank });
            }
            return Ok(row);
        }
        return lookup(class, None, p);
    }
    let rank = rank.ok_or(CatalogError::MissingParam { class, name: "rank" })?;
    let n = match class {
        CartanClass::AI | CartanClass::AII => rank + 1,
        _ => rank,
    };
    lookup(class, Some(n), p)
}

/// Every catalog row with restricted rank at most `max_rank`.  For the
/// families with a `p` parameter, `p` ranges over `n`, `n+1`, `n+2`
/// (enough to witness all three multiplicity regimes).  Deterministic
/// order: by class, then rank, then `p`.
pub fn all_spaces(max_rank: usize) -> Vec<SpaceDescriptor> {
    let mut out = Vec::new();
    for class in CartanClass::ALL {
        match class {
            CartanClass::AI | CartanClass::AII => {
                for rank in 1..=max_rank {
                    out.push(lookup(class, Some(rank + 1), None).unwrap());
                }
            }
            CartanClass::CI | CartanClass::DIIIEven => {
                for rank in 2..=max_rank {
                    out.push(lookup(class, Some(rank), None).unwrap());
                }
            }
            CartanClass::DIIIOdd => {
                for rank in 1..=max_rank {
                    out.push(lookup(class, Some(rank), None).unwrap());
                }
            }
            CartanClass::AIII | CartanClass::CII => {
                for rank in 1..=max_rank {
                    for p in rank..=rank + 2 {
                        // p = n needs C_n, which requires rank >= 2.
                        if p == rank && rank < 2 {
                            continue;
                        }
                        out.push(lookup(class, Some(rank), Some(p)).unwrap());
                    }
                }
            }
            CartanClass::BDI => {
                for rank in 2..=max_rank {
                    for p in rank..=rank + 2 {
                        // p = n gives D_n, which requires rank >= 4.
                        if p == rank && rank < 4 {
                            continue;
                        }
                        out.push(lookup(class, Some(rank), Some(p)).unwrap());
                    }
                }
            }
            _ => {
                let row = lookup(class, None, None).unwrap();
                if row.lie_type.rank <= max_rank {
                    out.push(row);
                }
            }
        }
    }
    out
}
