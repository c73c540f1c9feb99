use pentagrid::tilings::{classify_assortment, Assortment};

fn main() {
    let rows = [
        ("12345", "no solution"), ("11234", "2"), ("12134", "no solution"),
        ("11123", "cont"), ("11213", "cont"), ("11223", "4"), ("11232", "cont"),
        ("12312", "no solution"), ("12313", "no solution"),
        ("11112", "cont"), ("11122", "cont"), ("11212", "cont"), ("11111", "1"),
    ];
    for (word, want) in rows {
        let a: Assortment = word.parse().unwrap();
        let t0 = std::time::Instant::now();
        let (counts, outcome) = classify_assortment(&a, 3).unwrap();
        let cs: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
        eprintln!("{word} (want {want}): {} counts={:?} in {:?}", outcome.name(), cs, t0.elapsed());
    }
}
