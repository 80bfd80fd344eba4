//! Exact computations on smooth cubic surfaces over finite fields: the 27 lines,
//! Eckardt points, automorphism groups via the Weyl group W(E6), normal forms
//! of the automorphism strata, and quartic del Pezzo surfaces.

pub mod gf;
pub mod poly;
pub mod linalg;
pub mod mpoly;
pub mod projgeom;
pub mod groebner;
pub mod surface;
pub mod weyl;
pub mod lines;
pub mod eckardt;
pub mod autgrp;
pub mod forms;
pub mod dp4;
pub mod acceptance;
