//! Append-only JSON-lines result cache. The CLI process is the only writer.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::record::ResultRecord;

pub struct Cache {
    path: PathBuf,
    entries: HashMap<String, ResultRecord>,
}

impl Cache {
    /// Loads `path` if it exists. Lines that do not parse are skipped with a
    /// warning on `warn`.
    pub fn open(path: &Path, warn: &mut dyn Write) -> io::Result<Self> {
        let mut entries = HashMap::new();
        match File::open(path) {
            Ok(file) => {
                for (i, line) in BufReader::new(file).lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<ResultRecord>(&line) {
                        Ok(rec) => {
                            entries.insert(rec.cache_key(), rec);
                        }
                        Err(e) => {
                            writeln!(warn, "warning: {}:{}: skipping corrupt cache line: {e}", path.display(), i + 1)?;
                        }
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Cache {
            path: path.to_owned(),
            entries,
        })
    }

    pub fn get(&self, key: &str) -> Option<ResultRecord> {
        self.entries.get(key).map(|rec| {
            let mut rec = rec.clone();
            rec.cache_hit = true;
            rec
        })
    }

    pub fn insert(&mut self, rec: &ResultRecord) -> io::Result<()> {
        let key = rec.cache_key();
        if self.entries.contains_key(&key) {
            return Ok(());
        }
        let mut stored = rec.clone();
        stored.cache_hit = false;
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(file, "{}", serde_json::to_string(&stored)?)?;
        self.entries.insert(key, stored);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kv;

    #[test]
    fn skips_corrupt_lines_and_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let mut rec = ResultRecord::new("dyadic", kv!("n" => 3));
        rec.outputs = kv!("raw_count" => 49152);
        {
            let mut sink = Vec::new();
            let mut cache = Cache::open(&path, &mut sink).unwrap();
            assert!(cache.get(&rec.cache_key()).is_none());
            cache.insert(&rec).unwrap();
        }
        std::fs::OpenOptions::new()
            .append(true)
            .open(&path)
            .unwrap()
            .write_all(b"{not json\n")
            .unwrap();

        let mut warnings = Vec::new();
        let cache = Cache::open(&path, &mut warnings).unwrap();
        assert!(String::from_utf8(warnings).unwrap().contains("skipping corrupt cache line"));
        let hit = cache.get(&rec.cache_key()).unwrap();
        assert!(hit.cache_hit);
        assert_eq!(hit.outputs, rec.outputs);
    }
}
