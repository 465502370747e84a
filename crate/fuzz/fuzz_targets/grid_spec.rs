#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(grid) = fluxbound_cli::parse_grid(text) {
        if grid.n <= 4096 {
            let points = grid.points();
            assert_eq!(points.len(), grid.n);
            assert!(points.iter().all(|p| p.is_finite()));
        }
        assert_eq!(fluxbound_cli::parse_grid(&grid.to_string()).ok(), Some(grid));
    }
});
