fn main() {
    for lvl in [2usize, 4, 6, 8] {
        let t0 = std::time::Instant::now();
        match pentagrid::cayley::extend_coloring(lvl) {
            Ok(c) => {
                let rep = pentagrid::cayley::verify_coloring(&c).unwrap();
                let pats = pentagrid::cayley::observed_patterns(&c).unwrap();
                eprintln!(
                    "level {lvl}: ok, {} tiles, clean={}, uncovered_pairs={}, rows={:?}, {:?}",
                    c.len(), rep.is_clean(), pats.uncovered.len(), pats.matched_rows, t0.elapsed()
                );
            }
            Err(e) => eprintln!("level {lvl}: ERR {e} after {:?}", t0.elapsed()),
        }
    }
}
