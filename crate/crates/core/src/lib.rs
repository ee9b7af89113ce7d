pub mod catalog;
pub mod cli;
pub mod dissection;
pub mod exactnum;
pub mod geom;
pub mod render;
