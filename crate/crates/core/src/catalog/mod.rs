//! Named constructors for the concrete algebras, r-matrices and cochains the
//! workbench knows about. Names are stable and double as DSL identifiers.

pub mod double;
pub mod mu_prime;
pub mod osp;
pub mod sl;

use serde::Serialize;

use crate::bialgebra::{dual_algebra, LieBialgebra};
use crate::cohomology::Cochain1;
use crate::error::{Error, Result};
use crate::lie::{LieSuperAlgebra, TensorElement};
use crate::scalar::Poly;

pub use double::{make_double_dual_pencil, make_double_pencil, make_double_pieces, DoublePieces};
pub use mu_prime::{make_mu_prime, MuPrime, MuPrimeReport};
pub use osp::{make_mu1star, make_mu2star, make_osp12, make_osp12_algebra, make_psi, OspPieces};
pub use sl::{
    make_borel, make_gl, make_r_borel, make_rdj, make_rfull, make_rjordan, make_sl, SlLayout,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Algebra,
    Tensor,
    Cochain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    /// Algebra a tensor or cochain lives on by default.
    pub host: Option<&'static str>,
    pub description: &'static str,
}

const fn alg(name: &'static str, description: &'static str) -> CatalogEntry {
    CatalogEntry {
        name,
        kind: EntryKind::Algebra,
        host: None,
        description,
    }
}

const fn ten(name: &'static str, host: &'static str, description: &'static str) -> CatalogEntry {
    CatalogEntry {
        name,
        kind: EntryKind::Tensor,
        host: Some(host),
        description,
    }
}

const ENTRIES: &[CatalogEntry] = &[
    alg("sl2", "sl(2): H12, E12, E21"),
    alg("sl3", "sl(3): H12, H23, E_ij"),
    alg("sl4", "sl(4): H12, H23, H34, E_ij"),
    alg("gl3", "gl(3) on matrix units E_ij"),
    alg("borel", "{h, x | [h,x] = 2x}"),
    alg("osp12", "osp(1|2) on {h, Xp, Xm | vp, vm}"),
    alg("double.g1", "[H,X±] = ±X±, [Xp,Xm] = Hp"),
    alg("double.g2", "[Hp,X±] = ±X±, [Xp,Xm] = H"),
    alg("double.g1dual", "[hat_Hp, hat_Xm] = -theta hat_Xm"),
    alg("double.g2dual", "[hat_H, hat_Xp] = -theta hat_Xp"),
    alg("double.pencil", "a1 g1 + a2 g2"),
    alg("double.pencil.dual", "a1 g1* + a2 g2*"),
    alg("mu.prime", "first-order deforming bracket on gl(3) basis Y_ij, as tabulated"),
    alg("mu1star", "dual-basis bracket mu1* on osp(1|2)*"),
    alg("mu2star", "dual-basis bracket mu2* on osp(1|2)*"),
    alg("dual.std", "dual of sl(2) from the standard r-matrix (parameter h)"),
    alg("dual.jordan", "dual of sl(2) from the jordanian r-matrix (parameter xi)"),
    alg("dual.std3", "dual of sl(3) from the standard r-matrix (parameter h)"),
    alg("dual.jordan3", "dual of sl(3) from the jordanian r-matrix (parameter xi)"),
    ten("r.borel", "borel", "h ^ x"),
    ten("r.dj", "sl3", "standard r-matrix, inverse Cartan part plus 2h sum E_lk (x) E_kl"),
    ten("r.jordan", "sl3", "-xi (H1N ^ E1N + 2 sum E1k ^ EkN)"),
    ten("r.full", "sl3", "r.dj + r.jordan, built term by term"),
    ten("r.double", "double.pencil", "theta (Xp (x) Xm + H (x) Hp)"),
    CatalogEntry {
        name: "psi",
        kind: EntryKind::Cochain,
        host: Some("mu1star"),
        description: "tabulated 1-cochain on osp(1|2)*",
    },
];

pub fn catalog_list() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

fn unknown(name: &str) -> Error {
    Error::definition(format!("unknown catalog entry {name}"))
}

/// `slN` → `N`.
pub fn sl_rank(name: &str) -> Option<usize> {
    name.strip_prefix("sl")?.parse().ok().filter(|&n| n >= 2)
}

pub fn make_dual_standard(n: usize, h: &Poly) -> Result<LieSuperAlgebra> {
    let g = make_sl(n)?;
    let d = dual_algebra(&LieBialgebra::from_r(&g, &make_rdj(n, h)?)?)?;
    Ok(d.with_name(format!("dual.std(sl{n})")))
}

pub fn make_dual_jordan(n: usize, xi: &Poly) -> Result<LieSuperAlgebra> {
    let g = make_sl(n)?;
    let d = dual_algebra(&LieBialgebra::from_r(&g, &make_rjordan(n, xi)?)?)?;
    Ok(d.with_name(format!("dual.jordan(sl{n})")))
}

pub fn algebra(name: &str) -> Result<LieSuperAlgebra> {
    let h = || Poly::param("h");
    let xi = || Poly::param("xi");
    let a = match name {
        "gl3" => make_gl(3)?,
        "borel" => make_borel(),
        "osp12" => make_osp12_algebra()?,
        "double.g1" => make_double_pieces().g1,
        "double.g2" => make_double_pieces().g2,
        "double.g1dual" => make_double_pieces().g1_dual,
        "double.g2dual" => make_double_pieces().g2_dual,
        "double.pencil" => make_double_pencil(),
        "double.pencil.dual" => make_double_dual_pencil(),
        "mu.prime" => make_mu_prime(3)?.algebra,
        "mu1star" => make_mu1star(),
        "mu2star" => make_mu2star(),
        "dual.std" => make_dual_standard(2, &h())?,
        "dual.jordan" => make_dual_jordan(2, &xi())?,
        "dual.std3" => make_dual_standard(3, &h())?,
        "dual.jordan3" => make_dual_jordan(3, &xi())?,
        other => match sl_rank(other) {
            Some(n) => make_sl(n)?,
            _ => return Err(unknown(name)),
        },
    };
    Ok(a.with_name(name))
}

/// A catalog tensor over `host` (default host when `None`). The sl(N)
/// r-matrices follow the rank of the host.
pub fn tensor(name: &str, host: Option<&str>) -> Result<(TensorElement, String)> {
    let e = entry(name)
        .filter(|e| e.kind == EntryKind::Tensor)
        .ok_or_else(|| unknown(name))?;
    let host = host.unwrap_or(e.host.expect("tensors have a host"));
    let wrong_host = || {
        Error::definition(format!("{name} is not defined over {host}"))
    };
    let h = Poly::param("h");
    let xi = Poly::param("xi");
    let t = match name {
        "r.borel" if host == "borel" => make_r_borel(),
        "r.double" if host.starts_with("double.") && !host.ends_with("dual") => {
            make_double_pieces().r
        }
        "r.dj" | "r.jordan" | "r.full" => {
            let n = sl_rank(host).ok_or_else(wrong_host)?;
            match name {
                "r.dj" => make_rdj(n, &h)?,
                "r.jordan" => make_rjordan(n, &xi)?,
                _ => make_rfull(n, &h, &xi)?,
            }
        }
        _ => return Err(wrong_host()),
    };
    Ok((t, host.to_string()))
}

pub fn cochain(name: &str) -> Result<(Cochain1, String)> {
    match name {
        "psi" => Ok((make_psi(), "mu1star".into())),
        _ => Err(unknown(name)),
    }
}

pub enum CatalogObject {
    Algebra(LieSuperAlgebra),
    Tensor(TensorElement, String),
    Cochain(Cochain1, String),
}

pub fn lookup(name: &str) -> Result<CatalogObject> {
    let e = entry(name).ok_or_else(|| unknown(name))?;
    Ok(match e.kind {
        EntryKind::Algebra => CatalogObject::Algebra(algebra(name)?),
        EntryKind::Tensor => {
            let (t, h) = tensor(name, None)?;
            CatalogObject::Tensor(t, h)
        }
        EntryKind::Cochain => {
            let (c, h) = cochain(name)?;
            CatalogObject::Cochain(c, h)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_resolves() {
        for e in catalog_list() {
            assert!(lookup(e.name).is_ok(), "{}", e.name);
        }
    }

    #[test]
    fn list_contains_contract_names() {
        for n in ["osp12", "r.jordan", "psi", "sl2", "double.g1dual", "mu.prime"] {
            assert!(entry(n).is_some(), "{n}");
        }
    }

    #[test]
    fn r_matrices_follow_host_rank() {
        let (t, host) = tensor("r.jordan", Some("sl2")).unwrap();
        assert_eq!(host, "sl2");
        assert_eq!(t, make_rjordan(2, &Poly::param("xi")).unwrap());
        assert!(tensor("r.jordan", Some("borel")).is_err());
    }
}
