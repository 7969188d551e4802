pub mod compare;
pub mod derive_weights;
pub mod oracle;
pub mod run;
