//! Verbosity control through the `TAUBERIAN_LOG` environment variable:
//! `quiet` (default), `info`, or `debug`. Log lines go to stderr; product
//! output never passes through here.

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Quiet,
    Info,
    Debug,
}

pub fn level() -> Level {
    static LEVEL: OnceLock<Level> = OnceLock::new();
    *LEVEL.get_or_init(|| match std::env::var("TAUBERIAN_LOG").as_deref() {
        Ok("info") => Level::Info,
        Ok("debug") => Level::Debug,
        _ => Level::Quiet,
    })
}

pub fn info(message: impl AsRef<str>) {
    if level() >= Level::Info {
        eprintln!("[info] {}", message.as_ref());
    }
}

pub fn debug(message: impl AsRef<str>) {
    if level() >= Level::Debug {
        eprintln!("[debug] {}", message.as_ref());
    }
}
