//! Abstract numeration systems over regular languages: automata, exact word
//! counting, rep/val conversion, growth classification of recognizable sets
//! and the morphic characterization of their characteristic sequences.

pub mod automata;
pub mod counting;
pub mod growth;
pub mod morphic;
pub mod numeration;
