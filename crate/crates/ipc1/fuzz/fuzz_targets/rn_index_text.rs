#![no_main]

use ipc1::lattice::RNIndex;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(idx) = text.parse::<RNIndex>() {
        let printed = idx.to_string();
        let again: RNIndex = printed.parse().expect("printed names reparse");
        assert_eq!(again, idx);
    }
});
