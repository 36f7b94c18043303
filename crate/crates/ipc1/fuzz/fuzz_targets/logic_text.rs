#![no_main]

use ipc1::superint::Logic;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(logic) = text.parse::<Logic>() {
        let printed = logic.to_string();
        let again: Logic = printed.parse().expect("printed logics reparse");
        assert_eq!(again.to_string(), printed);
    }
});
