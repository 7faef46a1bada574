pub mod cliquesolver;
pub mod gf;
pub mod graphio;
pub mod harness;
pub mod product;
pub mod sidon;
