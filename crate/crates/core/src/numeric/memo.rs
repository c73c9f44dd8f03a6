use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Mutex, OnceLock};

/// Thread-safe memo table. Values are computed outside the lock, so two
/// threads may both compute the same key; the results are identical and
/// the first insert wins.
pub(crate) struct Memo<K, V> {
    map: OnceLock<Mutex<HashMap<K, V>>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo {
            map: OnceLock::new(),
        }
    }

    fn table(&self) -> &Mutex<HashMap<K, V>> {
        self.map.get_or_init(|| Mutex::new(HashMap::new()))
    }

    pub(crate) fn get(&self, key: &K) -> Option<V> {
        self.table().lock().unwrap().get(key).cloned()
    }

    pub(crate) fn get_or_insert_with(&self, key: K, compute: impl FnOnce() -> V) -> V {
        if let Some(v) = self.get(&key) {
            return v;
        }
        let value = compute();
        self.table()
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(value)
            .clone()
    }

    pub(crate) fn try_get_or_insert_with<E>(
        &self,
        key: K,
        compute: impl FnOnce() -> Result<V, E>,
    ) -> Result<V, E> {
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        let value = compute()?;
        Ok(self
            .table()
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(value)
            .clone())
    }
}
