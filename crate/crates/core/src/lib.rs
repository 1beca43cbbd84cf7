//! Multiple sampling and interpolation experiments in the Fock space `F²_α`.
//!
//! The guide in `book/` walks through the modules; its code listings are
//! compiled and run as doctests.

pub mod error;
pub mod fock;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod kernels;
pub mod numerics;
pub mod report;

macro_rules! book_chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[cfg(doctest)]
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub mod $name {}
        )*
    };
}

book_chapters! {
    book_introduction => "introduction.md",
    book_fock_space => "fock-space.md",
    book_kernels => "kernels.md",
    book_geometry => "geometry.md",
    book_spectral => "spectral.md",
    book_cli => "cli.md",
}
