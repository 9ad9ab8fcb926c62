//! Process-wide memo of orbit unions keyed by ring spec string and enumeration cap.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nilprod_core::{Gl2, MOrbitAtlas, MatError, Ring};

#[derive(Default)]
pub struct AtlasMemo {
    entries: Mutex<HashMap<(String, u64), Arc<MOrbitAtlas>>>,
}

impl AtlasMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static AtlasMemo {
        static MEMO: OnceLock<AtlasMemo> = OnceLock::new();
        MEMO.get_or_init(AtlasMemo::new)
    }

    /// Builds at most once per key; the lock is held while building, so there is one writer.
    pub fn get_or_build(&self, ring: &Ring, cap: u64) -> Result<Arc<MOrbitAtlas>, MatError> {
        let key = (ring.spec().to_string(), cap);
        let mut entries = self.entries.lock().expect("memo lock poisoned");
        if let Some(a) = entries.get(&key) {
            return Ok(Arc::clone(a));
        }
        let gl2 = Gl2::new(ring, cap)?;
        let atlas = Arc::new(MOrbitAtlas::build(ring, &gl2));
        entries.insert(key, Arc::clone(&atlas));
        Ok(atlas)
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
