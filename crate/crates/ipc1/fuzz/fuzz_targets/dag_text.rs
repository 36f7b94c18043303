#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(g) = ipc1::formula::parse_dag(&text) {
        let idx = ipc1::lattice::rn_index_dag(&g);
        let printed = ipc1::formula::render_dag(&g);
        let again = ipc1::formula::parse_dag(&printed).expect("rendered graphs reparse");
        assert_eq!(ipc1::lattice::rn_index_dag(&again), idx);
        assert_eq!(ipc1::formula::render_dag(&again), printed);
    }
});
