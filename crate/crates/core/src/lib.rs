//! Classifying spaces of finite acyclic categories and their stellar stratifications.
//!
//! The geometric substrate is [`FinSimpSet`], a finite simplicial set stored by its
//! nondegenerate simplices. A finite acyclic category [`AcycCat`] (or its enriched
//! form [`EnrichedCat`]) has a classifying space whose cells are chains of arrows;
//! labelling each chain by its last object gives the unstable stratification, a
//! [`StratSpace`]. From the strata and their parameter spaces one recovers the
//! category, and conical charts certify that the stratification is conical.
//! Discrete Morse matchings on regular complexes produce flow categories whose
//! classifying spaces are stratified by critical cells.

pub mod acyccat;
pub mod exitpath;
pub mod fixtures;
pub mod morse;
pub mod poset;
pub mod simpset;
pub mod stellar;
pub mod strat;

pub use acyccat::{AcycCat, CategoryError, CategoryJson, Chain, EnrichedCat, LoadedCategory, Mor};
pub use exitpath::{ConicalChart, ExitError, Horn};
pub use morse::{FlowCat, FlowHoms, Matching, MorseError, RegComplex};
pub use poset::{FinPoset, PosetError, PosetJson};
pub use simpset::io::{IoError, SimpSetJson};
pub use simpset::{CellTable, ChainComplex, FinSimpSet, HomologyReport, Simplex, SimplexId};
pub use stellar::{CylStructure, Side, StellarCell, StellarError};
pub use strat::{Inline, StratError, StratJson, StratReport, StratSpace};
