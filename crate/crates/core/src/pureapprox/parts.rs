use crate::error::{Error, Result};
use crate::fgab::{Int, TorsionSplit};
use crate::lathom::{check_purity_condition, require_purity, require_valid, validate_hom, SubgroupHom};

fn reverify(psi: &SubgroupHom, what: &str) -> Result<()> {
    if !validate_hom(psi)?.is_valid() {
        return Err(Error::Internal(format!("{what} is not a lattice homomorphism")));
    }
    if !check_purity_condition(psi)? {
        return Err(Error::Internal(format!("{what} fails the purity condition")));
    }
    Ok(())
}

/// `u -> G_u[m]`.
pub fn hom_m_torsion(phi: &SubgroupHom, m: &Int) -> Result<SubgroupHom> {
    require_valid(phi)?;
    require_purity(phi)?;
    let gm = TorsionSplit::new(phi.group()).m_torsion(m)?;
    let out = phi.map_values(phi.group(), |_, g| g.intersection(&gm))?;
    reverify(&out, "u -> G_u[m]")?;
    Ok(out)
}

/// The torsion part `u -> T(G_u)` (values in `G`) and the torsion-free part
/// `u -> pi(G_u)` (values in `G/T(G)`).
#[derive(Clone, Debug)]
pub struct TorsionParts {
    pub torsion: SubgroupHom,
    pub free: SubgroupHom,
    pub split: TorsionSplit,
}

pub fn hom_torsion_parts(phi: &SubgroupHom) -> Result<TorsionParts> {
    require_valid(phi)?;
    require_purity(phi)?;
    let split = TorsionSplit::new(phi.group());
    let torsion = phi.map_values(phi.group(), |_, g| split.torsion_of(g))?;
    let free = phi.map_values(split.quotient(), |_, g| split.project_subgroup(g))?;
    reverify(&torsion, "u -> T(G_u)")?;
    reverify(&free, "u -> pi(G_u)")?;
    Ok(TorsionParts { torsion, free, split })
}
