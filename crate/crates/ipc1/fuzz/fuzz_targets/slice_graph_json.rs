#![no_main]

use ipc1::reduction::{apath, validate_slice_graph, SliceGraph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(g) = SliceGraph::from_json(&text) {
        let printed = g.to_json();
        let again = SliceGraph::from_json(&printed).expect("printed graphs reload");
        assert_eq!(again.to_json(), printed);
        if validate_slice_graph(&g).is_empty() {
            let _ = apath(&g, g.s(), g.t());
        }
    }
});
