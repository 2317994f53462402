//! Subject grammar and the JSON certificate document schema used by the
//! `exptaylor` binary. Every integer travels as a decimal string; the
//! discriminants alone overflow every fixed-width type well before the
//! degrees the engine handles.

pub mod document;
pub mod subject;
