//! Exact character tables: class structure constants, the Dixon-Schneider
//! construction over a prime field with cyclotomic lifting, and the
//! vanishing-character witness test on `W(T)`.

mod cyclotomic;
mod dixon;
mod lemma;

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};
pub use dixon::{
    class_mult_coefficient, class_structure_constants, dixon_character_table, dixon_prime,
    CharacterTable, ClassInfo, DEFAULT_CLASS_CAP,
};
pub use lemma::{
    char_witness_validate, lemma25_check, lemma25_search, CharCheck, CharRefutation,
    CharWitnessSpec,
};
