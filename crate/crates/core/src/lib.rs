pub mod algebra;
pub mod duality;
pub mod element;
pub mod error;
pub mod evaluation;
pub mod generate;
pub mod json;
pub mod proof;
pub mod relational;
pub mod relativization;
pub mod suite;
pub mod syntax;

pub use algebra::{FiniteBao, HybridStructure, Kind};
pub use element::Element;
pub use error::{Error, Result};
pub use evaluation::{Assignment, Verdict};
pub use relational::{KripkeModel, TwoSortedFrame};
pub use syntax::{parse, Equation, Formula, Language, SubstitutionMap};
