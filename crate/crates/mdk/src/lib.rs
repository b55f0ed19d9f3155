//! IO companion to `mdk-core`: matrix/word text formats, renderers,
//! K-theory reports, and the reproduction battery used by the CLI.

pub mod render;
pub mod report;
pub mod source;
pub mod verify;
pub mod words;
