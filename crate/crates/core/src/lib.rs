//! Symbolic computation in the algebra of Steenrod operations on the
//! cohomology of cocommutative Hopf algebras over F_p, p odd.
//!
//! The algebra is generated by the Bockstein `b` and powers `P^k` (`P0` is
//! not the unit) subject to `b b = 0` and two Adem-type families. This
//! crate rewrites words to the admissible basis, enumerates that basis by
//! bidegree, multiplies in the Koszul-signed tensor square and checks
//! candidate coproducts against the relations and coalgebra axioms.
//!
//! ```
//! use bp_engine::{parse_expression, Algebra, Prime};
//!
//! let p = Prime::new(3).unwrap();
//! let alg = Algebra::new(p);
//! let e = alg.normalize(&parse_expression("P1 P1", p).unwrap()).unwrap();
//! assert_eq!(e.to_text(p), "2 P2 P0");
//! ```

// `is_zero` and `is_unit` play the role of `is_empty`
#![allow(clippy::len_without_is_empty)]

pub mod algebra;
pub mod basis;
pub mod cli;
pub mod coproduct;
pub mod error;
pub mod modular;
pub mod output;
pub mod parse;
pub mod tensor;
pub mod term;

pub use algebra::{rewrite_step, Algebra, DEFAULT_FUEL};
pub use basis::admissible_basis;
pub use coproduct::{
    check_coassociativity, check_counit, check_relation_ar1, check_relations, coproduct, coproduct_word,
    cp_square_check, square_obstruction, CheckReport, CoproductScheme, ObstructionReport, RelationSet,
};
pub use error::{Error, ParseError, Result};
pub use modular::{binom_mod_p, coeff_a, coeff_b, BinomialTable, Fp, Prime};
pub use parse::parse_expression;
pub use tensor::{normalize_tensor, tensor_multiply, Tensor, TensorElement};
pub use term::{Bidegree, Element, Generator, Grading, Monomial, Strategy};
