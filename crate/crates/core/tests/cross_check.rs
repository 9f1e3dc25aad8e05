use std::time::Instant;

use strictcol::strict::decide_strict_search;
use strictcol::{complete_multipartite, decide_strict_cmp, PartSizes};

#[test]
fn theorem_agrees_with_search_at_k3() {
    for text in ["1,1,1", "2,2,2", "1,2,2", "2,2,3", "2,3,3", "3,3,3"] {
        let sizes: PartSizes = text.parse().unwrap();
        let start = Instant::now();
        let g = complete_multipartite(&sizes).unwrap();
        let search = decide_strict_search(&g, 3).unwrap();
        let theorem = decide_strict_cmp(&sizes).unwrap();
        println!("{text}: strict={} in {:?}", search.strict, start.elapsed());
        assert_eq!(search.strict, theorem.strict, "{text}");
        assert!(search.verify_on(&g).unwrap() || !search.strict, "{text}");
        assert!(theorem.verify().unwrap(), "{text}");
    }
}
