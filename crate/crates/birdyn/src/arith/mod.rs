pub mod apoly;
pub mod cyclo;
pub mod expr;
pub mod factor;
pub mod field;
pub mod fp;
pub mod hpoly;
pub mod linalg;
pub mod mgcd;
pub mod numfield;
pub mod rat;
pub mod roots;
pub mod sturm;
pub mod upoly;

pub use apoly::APoly;
pub use field::Field;
pub use fp::Fp;
pub use hpoly::HPoly;
pub use numfield::{FieldElem, NumberField};
pub use rat::Rat;
pub use upoly::UPoly;
