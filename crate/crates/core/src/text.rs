//! Text normalization and identifier syntax shared by every module.

use unicode_normalization::{is_nfc, UnicodeNormalization};

/// Longest identifier accepted, in code points.
pub const MAX_ID_LEN: usize = 256;

/// Returns the NFC form of `s`, borrowing when it is already normalized.
pub fn nfc(s: &str) -> String {
    if is_nfc(s) {
        s.to_owned()
    } else {
        s.nfc().collect()
    }
}

/// Checks identifier syntax: non-empty, at most [`MAX_ID_LEN`] code points,
/// letters, digits, `_`, `-` and `.` only.
pub fn check_id(id: &str) -> Result<(), String> {
    if id.is_empty() {
        return Err("identifier is empty".into());
    }
    let len = id.chars().count();
    if len > MAX_ID_LEN {
        return Err(format!(
            "identifier has {len} code points, limit is {MAX_ID_LEN}"
        ));
    }
    if let Some(bad) = id
        .chars()
        .find(|c| !(c.is_alphanumeric() || matches!(c, '_' | '-' | '.')))
    {
        return Err(format!("identifier contains disallowed character {bad:?}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nfc_composes() {
        assert_eq!(nfc("e\u{301}"), "\u{e9}");
        assert_eq!(nfc("bank"), "bank");
    }

    #[test]
    fn id_syntax() {
        assert!(check_id("c1").is_ok());
        assert!(check_id("t_1-a.b").is_ok());
        assert!(check_id("Begriff\u{e4}").is_ok());
        assert!(check_id("").is_err());
        assert!(check_id("a b").is_err());
        assert!(check_id("a/b").is_err());
        assert!(check_id("a:b").is_err());
        assert!(check_id(&"x".repeat(256)).is_ok());
        assert!(check_id(&"x".repeat(257)).is_err());
    }
}
