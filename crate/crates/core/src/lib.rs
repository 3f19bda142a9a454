pub mod geometry;
pub mod visibility;
pub mod oracle;
pub mod decomposition;
pub mod guarding;
pub mod setcover;
pub mod svg;
pub mod pipeline;
pub mod io;
