pub mod exactla;
pub mod simplicial;
pub mod cdga;
pub mod hochschild;
pub mod homology;
pub mod bar;
pub mod factorization;
pub mod cli;

/// The user guide, compiled here so its examples run as doc-tests.
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/simplicial_sets.md")]
    pub mod simplicial_sets {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    pub mod algebras {}
    #[doc = include_str!("../../../book/src/hochschild_complex.md")]
    pub mod hochschild_complex {}
    #[doc = include_str!("../../../book/src/homology.md")]
    pub mod homology {}
    #[doc = include_str!("../../../book/src/bar.md")]
    pub mod bar {}
    #[doc = include_str!("../../../book/src/factorization.md")]
    pub mod factorization {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
}
