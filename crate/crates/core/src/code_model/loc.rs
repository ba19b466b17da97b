/// Counts physical lines that carry at least one non-whitespace character
/// outside every comment.
///
/// Line comments run to the end of the line and block comments may span
/// lines. Comment delimiters inside string, character and text-block
/// literals are literal text. Blank lines inside a text block are blank.
pub fn count_loc(text: &str) -> usize {
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Code,
        LineComment,
        BlockComment,
        Str,
        Char,
        TextBlock,
    }

    let bytes = text.as_bytes();
    let mut state = State::Code;
    let mut line_has_code = false;
    let mut count = 0;
    let mut i = 0;

    while i < bytes.len() {
        let b = bytes[i];
        if b == b'\n' || b == b'\r' {
            if line_has_code {
                count += 1;
            }
            line_has_code = false;
            // Strings and char literals cannot span lines; recover at the break.
            match state {
                State::LineComment | State::Str | State::Char => state = State::Code,
                _ => {}
            }
            i += if b == b'\r' && bytes.get(i + 1) == Some(&b'\n') {
                2
            } else {
                1
            };
            continue;
        }
        let next = bytes.get(i + 1).copied();
        match state {
            State::Code => {
                if b == b'/' && next == Some(b'/') {
                    state = State::LineComment;
                    i += 2;
                    continue;
                }
                if b == b'/' && next == Some(b'*') {
                    state = State::BlockComment;
                    i += 2;
                    continue;
                }
                if !b.is_ascii_whitespace() {
                    line_has_code = true;
                }
                if b == b'"' {
                    if bytes[i..].starts_with(b"\"\"\"") {
                        state = State::TextBlock;
                        i += 3;
                        continue;
                    }
                    state = State::Str;
                } else if b == b'\'' {
                    state = State::Char;
                }
                i += 1;
            }
            State::LineComment => i += 1,
            State::BlockComment => {
                if b == b'*' && next == Some(b'/') {
                    state = State::Code;
                    i += 2;
                } else {
                    i += 1;
                }
            }
            State::Str | State::Char => {
                if !b.is_ascii_whitespace() {
                    line_has_code = true;
                }
                let close = if state == State::Str { b'"' } else { b'\'' };
                if b == b'\\' {
                    // Escaped line breaks are left for the outer loop.
                    if matches!(next, Some(b'\n') | Some(b'\r') | None) {
                        i += 1;
                    } else {
                        i += 2;
                    }
                } else {
                    if b == close {
                        state = State::Code;
                    }
                    i += 1;
                }
            }
            State::TextBlock => {
                if !b.is_ascii_whitespace() {
                    line_has_code = true;
                }
                if b == b'\\' && !matches!(next, Some(b'\n') | Some(b'\r') | None) {
                    i += 2;
                } else if bytes[i..].starts_with(b"\"\"\"") {
                    state = State::Code;
                    i += 3;
                } else {
                    i += 1;
                }
            }
        }
    }
    if line_has_code {
        count += 1;
    }
    count
}
