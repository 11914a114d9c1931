#![allow(dead_code)]

pub mod rates;
pub mod shooting;
