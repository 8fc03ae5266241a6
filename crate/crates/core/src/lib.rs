//! Sonification of images.
//!
//! An image is filtered into a [`VisualDecomposition`]: a superposition of
//! dots, segments and arcs (the *kets*), split into an envelope (the main
//! outline) and patterns (everything else). The [`transform`] maps each
//! term to a short musical figure, and [`score`] writes the result as a
//! MIDI file, an SVG drawing or JSON.
//!
//! ```no_run
//! use ketsonic::{filter, pipeline};
//!
//! let img = filter::load_image("drawing.png")?;
//! let out = pipeline::sonify(&img, &pipeline::SonifyConfig::default())?;
//! std::fs::write("drawing.mid", &out.midi)?;
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Geometry routines are generic over [`Scalar`] (`f32` or `f64`); the
//! domain types use `f64`, and the aliases below fix the geometry types
//! to it.

pub mod error;
pub mod filter;
pub mod geom;
pub mod kets;
pub mod pipeline;
pub mod raster;
pub mod scalar;
pub mod score;
pub mod synth;
pub mod transform;

pub use error::{Error, Result};
pub use kets::{KetKind, KetPlacement, Term, VisualDecomposition, VisualKet};
pub use raster::{Bitmap, Frame, ImageRaster};
pub use scalar::Scalar;
pub use transform::{Articulation, MappingConfig, SoundDecomposition, SoundEvent};

pub type Point = geom::Point<f64>;
pub type LineFit = geom::LineFit<f64>;
pub type CircleFit = geom::CircleFit<f64>;
