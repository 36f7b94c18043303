#![no_main]

use ipc1::kripke::KripkeModel;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(m) = KripkeModel::from_json(&text) {
        let printed = m.to_json();
        let again = KripkeModel::from_json(&printed).expect("printed models reload");
        assert_eq!(again.to_json(), printed);
        // Validation must never panic, whatever the verdict.
        let _ = again.validate();
    }
});
