//! Builders turning scenario specifications into live objects: instance
//! constructors, ideals, filtrations, presented pairs.

use super::wire::{algebra_from_wire, element_from_wire, WireElement, WireScalar};
use super::{FiltrationSpec, IdealSpec, InstanceSpec};
use crate::algebra::instances::{
    default_gen_labels, full_upper_triangular, scalar_plus_strictly_upper, trunc_free, zmod_pk,
    InstanceAlgebra,
};
use crate::algebra::{commutator_filtration, Algebra, Element, Filtration, Ideal, Pair};
use crate::error::{Error, Result};
use crate::lf_extension::PresentedPair;
use crate::presentations::{FreePoly, NcPresentation, Word};
use crate::scalars::{ScalarRing, Scalar};

/// A scenario instance materialized: either a plain structure-constant
/// instance with its natural chain, or a presented pair.
pub enum BuiltInstance {
    Plain(InstanceAlgebra),
    Presented(PresentedPair),
}

impl BuiltInstance {
    pub fn algebra(&self) -> &Algebra {
        match self {
            BuiltInstance::Plain(i) => &i.algebra,
            BuiltInstance::Presented(p) => p.algebra(),
        }
    }

    pub fn presented(&self) -> Result<&PresentedPair> {
        match self {
            BuiltInstance::Presented(p) => Ok(p),
            BuiltInstance::Plain(_) => Err(Error::Scenario(
                "this task needs a presentation-backed instance (kinds: presentation, trunc_free, prime_field)"
                    .into(),
            )),
        }
    }
}

pub fn build_instance(spec: &InstanceSpec) -> Result<BuiltInstance> {
    match spec {
        InstanceSpec::TruncFree {
            p,
            generators,
            deg_cap,
            presented,
        } => {
            let labels = default_gen_labels(*generators);
            if presented.unwrap_or(false) {
                let ring = ScalarRing::prime_field(*p)?;
                Ok(BuiltInstance::Presented(PresentedPair::truncated_free(
                    ring,
                    labels,
                    *deg_cap,
                )?))
            } else {
                let ring = ScalarRing::prime_field(*p)?;
                Ok(BuiltInstance::Plain(trunc_free(ring, labels, *deg_cap)?))
            }
        }
        InstanceSpec::ZmodPk { p, k } => Ok(BuiltInstance::Plain(zmod_pk(*p, *k)?)),
        InstanceSpec::PrimeField { p } => {
            let ring = ScalarRing::prime_field(*p)?;
            Ok(BuiltInstance::Presented(PresentedPair::scalar_field(ring)?))
        }
        InstanceSpec::ScalarUpper { p, size } => {
            let ring = ScalarRing::prime_field(*p)?;
            Ok(BuiltInstance::Plain(scalar_plus_strictly_upper(ring, *size)?))
        }
        InstanceSpec::FullUpper { p, size } => {
            let ring = ScalarRing::prime_field(*p)?;
            Ok(BuiltInstance::Plain(full_upper_triangular(ring, *size)?))
        }
        InstanceSpec::Table { algebra } => {
            let a = algebra_from_wire(algebra)?;
            Ok(BuiltInstance::Plain(InstanceAlgebra {
                algebra: a,
                ideal_gens: Vec::new(),
                chain_gens: Vec::new(),
            }))
        }
        InstanceSpec::Presentation {
            p,
            generators,
            relations,
            deg_cap,
            residues,
        } => {
            let ring = ScalarRing::prime_field(*p)?;
            let rels = relations
                .iter()
                .map(|r| free_poly_from_wire(ring, generators.len(), r))
                .collect::<Result<Vec<_>>>()?;
            let pres = NcPresentation::new(ring, generators.clone(), rels, *deg_cap)?;
            // Residue algebra defaults to the scalar field with all
            // generators residually zero unless residues are supplied.
            let residue_algebra = Algebra::new(
                ring,
                vec!["1".to_string()],
                vec![vec![Scalar::one(ring)]],
                vec![Scalar::one(ring)],
            )?;
            let gen_residues = match residues {
                None => vec![residue_algebra.zero(); generators.len()],
                Some(rs) => rs
                    .iter()
                    .map(|w| element_from_wire(&residue_algebra, w))
                    .collect::<Result<Vec<_>>>()?,
            };
            Ok(BuiltInstance::Presented(PresentedPair::from_presentation(
                pres,
                residue_algebra,
                gen_residues,
            )?))
        }
    }
}

/// Relations serialize as arrays of [coefficient, word] pairs, a word
/// being an array of generator indices.
pub fn free_poly_from_wire(
    ring: ScalarRing,
    gen_count: usize,
    terms: &[(WireScalar, Vec<u16>)],
) -> Result<FreePoly> {
    let mut p = FreePoly::zero();
    for (c, word) in terms {
        for &g in word {
            if g as usize >= gen_count {
                return Err(Error::Scenario(format!(
                    "generator index {g} out of range"
                )));
            }
        }
        let coeff = super::wire::scalar_from_wire(ring, c)?;
        p = p.add(&FreePoly::monomial(Word(word.clone()), coeff));
    }
    Ok(p)
}

/// Resolves the distinguished ideal: explicit generators, or the
/// instance's own.
pub fn build_ideal(inst: &BuiltInstance, spec: Option<&IdealSpec>) -> Result<Ideal> {
    let algebra = inst.algebra();
    match spec {
        Some(IdealSpec::Generators { generators }) => {
            let gens = generators
                .iter()
                .map(|w| element_from_wire(algebra, w))
                .collect::<Result<Vec<_>>>()?;
            Ok(Ideal::closure(algebra, &gens))
        }
        Some(IdealSpec::Zero) => Ok(Ideal::zero(algebra)),
        None => match inst {
            BuiltInstance::Plain(i) => {
                if i.ideal_gens.is_empty() && i.chain_gens.is_empty() {
                    Err(Error::Scenario(
                        "table instances need explicit ideal generators".into(),
                    ))
                } else {
                    Ok(Ideal::closure(algebra, &i.ideal_gens))
                }
            }
            BuiltInstance::Presented(p) => Ok(p.pair().ideal().clone()),
        },
    }
}

/// Resolves the filtration and runs the hypothesis checks.
pub fn build_filtration(
    inst: &BuiltInstance,
    pair: &Pair,
    spec: Option<&FiltrationSpec>,
) -> Result<Filtration> {
    match spec.unwrap_or(&FiltrationSpec::Default) {
        FiltrationSpec::Default | FiltrationSpec::Adic | FiltrationSpec::Degree => match inst {
            BuiltInstance::Plain(i) => {
                if i.chain_gens.is_empty() {
                    return Err(Error::Scenario(
                        "instance has no natural chain; give an explicit filtration".into(),
                    ));
                }
                Filtration::from_generator_chain(pair.clone(), &i.chain_gens)
            }
            BuiltInstance::Presented(p) => {
                if p.pair() != pair {
                    return Err(Error::Scenario(
                        "custom ideals need an explicit filtration on presented instances".into(),
                    ));
                }
                p.radical_filtration()
            }
        },
        FiltrationSpec::Commutator => {
            let cf = commutator_filtration(pair);
            if !cf.terminates_at_zero {
                return Err(Error::BadFiltration(
                    "commutator filtration stabilizes at a nonzero ideal".into(),
                ));
            }
            Ok(cf.to_filtration(pair)?.checked().0)
        }
        FiltrationSpec::Chain { chain } => {
            let algebra = pair.algebra();
            let ideals = chain
                .iter()
                .map(|gens| {
                    let elems: Vec<Element> = gens
                        .iter()
                        .map(|w: &WireElement| element_from_wire(algebra, w))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Ideal::closure(algebra, &elems))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Filtration::new(pair.clone(), ideals)?.checked().0)
        }
    }
}
