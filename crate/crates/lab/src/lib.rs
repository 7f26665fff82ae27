//! Library half of the lab binary: config parsing, descriptor JSON,
//! recipe planning, report formatting, and the command implementations.

pub mod commands;
pub mod config;
pub mod descriptor_json;
pub mod planner;
pub mod report;
