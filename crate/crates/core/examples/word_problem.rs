//! Normal forms, reduced words and parabolic cosets in a Coxeter group.
//!
//! ```text
//! cargo run --example word_problem -- [path.cox] [word letters…]
//! ```

use evencox::coxeter::{CayleyBall, CoxeterGroup, CoxeterMatrix, GenSet};
use evencox::fixtures;

fn main() -> evencox::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(&path).map_err(|e| evencox::Error::Io(format!("{path}: {e}")))?,
        None => fixtures::SYS_B.to_owned(),
    };
    let m = CoxeterMatrix::parse(&text)?;
    let letters: Vec<String> = args.collect();
    let names: Vec<&str> = if letters.is_empty() { vec!["t", "s", "t", "s", "q", "t"] } else { letters.iter().map(String::as_str).collect() };
    let word = names.iter().map(|n| m.generator(n)).collect::<evencox::Result<Vec<_>>>()?;

    let g = CoxeterGroup::new(m.clone());
    let x = g.normal_form(&word);
    println!("input       {}", m.format_word(&word));
    println!("normal form {}  (length {})", g.format(&x), x.len());
    println!("reduced words:");
    for w in g.reduced_words(&x).iter() {
        println!("  {}", m.format_word(w));
    }
    println!("right descents {}", m.format_set(g.right_descents(&x)));
    println!("inverse        {}", g.format(&g.inverse(&x)));
    for t in m.all().iter() {
        let coset = GenSet::singleton(t);
        println!("min rep of x·W{} = {}", m.format_set(coset), g.format(&g.coset_min_rep(&x, coset)));
    }

    let ball = CayleyBall::new(&m, 4);
    println!("ball of radius 4: {} elements, layers {:?}", ball.len(), ball.layer_sizes());
    Ok(())
}
