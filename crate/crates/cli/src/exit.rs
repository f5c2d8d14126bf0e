//! Exit statuses. Batch runs return the worst status, ranked
//! `USAGE > UNKNOWN > NEGATIVE > OK`.

pub const OK: u8 = 0;
/// NonTheorem, a violation, or an unstabilized probe.
pub const NEGATIVE: u8 = 1;
/// Parse errors, language mismatches, invalid flags, ranks or schedules.
pub const USAGE: u8 = 2;
/// A resource limit was reached.
pub const UNKNOWN: u8 = 3;

fn severity(code: u8) -> u8 {
    match code {
        OK => 0,
        NEGATIVE => 1,
        UNKNOWN => 2,
        _ => 3,
    }
}

pub fn worst(a: u8, b: u8) -> u8 {
    if severity(b) > severity(a) {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(worst(OK, NEGATIVE), NEGATIVE);
        assert_eq!(worst(UNKNOWN, NEGATIVE), UNKNOWN);
        assert_eq!(worst(UNKNOWN, USAGE), USAGE);
        assert_eq!(worst(USAGE, OK), USAGE);
        assert_eq!([OK, NEGATIVE, UNKNOWN, OK].into_iter().fold(OK, worst), UNKNOWN);
    }
}
