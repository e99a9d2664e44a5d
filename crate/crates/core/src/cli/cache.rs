//! Persistent cache of SL3 simple characters: one append-only JSON-lines
//! file in the directory named by `REDPAIR_CACHE_DIR`. Deleting it never
//! changes results; unreadable or invalid lines are ignored.

use std::collections::BTreeSet;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::a2lat::A2Weight;
use crate::charlat::FormalCharacter;
use crate::error::Result;
use crate::sl3verdict::{validate_simple_character, SimpleCharsA2};

pub const CACHE_DIR_ENV: &str = "REDPAIR_CACHE_DIR";
const FILE_NAME: &str = "characters.jsonl";
const KIND: &str = "simple_a2";

#[derive(Serialize, Deserialize)]
struct CacheLine {
    p: u64,
    weight: A2Weight,
    kind: String,
    character: FormalCharacter,
}

pub struct CharCache {
    path: PathBuf,
}

impl CharCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CharCache {
            path: dir.into().join(FILE_NAME),
        }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(Self::new)
    }

    fn read(&self) -> Vec<CacheLine> {
        let Ok(text) = fs::read_to_string(&self.path) else {
            return Vec::new();
        };
        text.lines()
            .filter_map(|l| serde_json::from_str::<CacheLine>(l).ok())
            .filter(|l| l.kind == KIND)
            .collect()
    }

    /// Seeds `chars` with every valid cached character for its prime.
    pub fn preload(&self, chars: &SimpleCharsA2<'_>) {
        let p = chars.p();
        for line in self.read() {
            if line.p == p.get()
                && validate_simple_character(p, line.weight, &line.character).is_ok()
            {
                chars.preload(line.weight, line.character);
            }
        }
    }

    /// Appends the characters of `chars` that the file does not have yet.
    pub fn store(&self, chars: &SimpleCharsA2<'_>) -> Result<()> {
        let p = chars.p().get();
        let known: BTreeSet<A2Weight> = self
            .read()
            .into_iter()
            .filter(|l| l.p == p)
            .map(|l| l.weight)
            .collect();
        let fresh: Vec<_> = chars
            .memoized()
            .into_iter()
            .filter(|(w, _)| !known.contains(w))
            .collect();
        if fresh.is_empty() {
            return Ok(());
        }
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut buf = String::new();
        for (weight, character) in fresh {
            let line = CacheLine {
                p,
                weight,
                kind: KIND.into(),
                character,
            };
            buf.push_str(&serde_json::to_string(&line).expect("serializable"));
            buf.push('\n');
        }
        // One write call per command keeps concurrent appends line-atomic.
        OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?
            .write_all(buf.as_bytes())?;
        Ok(())
    }
}
