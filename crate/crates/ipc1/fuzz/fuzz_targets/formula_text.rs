#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(f) = ipc1::formula::parse(&text) {
        // Rendering is a fixpoint: what we print reparses to the same print.
        let printed = ipc1::formula::render(&f);
        let again = ipc1::formula::parse(&printed).expect("rendered formulas reparse");
        assert_eq!(ipc1::formula::render(&again), printed);
    }
});
