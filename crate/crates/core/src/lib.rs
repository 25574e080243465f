pub mod analysis;
pub mod channel;
pub mod cli;
pub mod code;
pub mod gf;
pub mod parity;
pub mod patterns;
pub mod pipeline;
pub mod presets;
pub mod rs;
pub mod sim;
