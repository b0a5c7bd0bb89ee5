//! Parser for the tree expression grammar:
//!
//! ```text
//! tree    := subtree ";"
//! subtree := LABEL | "(" subtree ("," subtree)+ ")"
//! LABEL   := [A-Za-z0-9_]+
//! ```
//!
//! Whitespace between tokens is insignificant; there are no branch lengths.
//! The serializer lives on [`PhyloTree`]'s `Display` impl and always emits the
//! canonical form, so `parse(t.to_string()) == t`.

use std::iter::Peekable;
use std::str::CharIndices;

use super::{Label, PhyloTree, TreeError};

/// Parses a complete tree expression.
pub fn parse_tree(text: &str) -> Result<PhyloTree, TreeError> {
    let mut parser = Parser {
        chars: text.char_indices().peekable(),
        pos: 0,
    };
    let tree = parser.subtree()?;
    parser.expect(';')?;
    parser.skip_whitespace();
    if parser.chars.peek().is_some() {
        return Err(parser.syntax("trailing input after `;`"));
    }
    Ok(tree)
}

struct Parser<'a> {
    chars: Peekable<CharIndices<'a>>,
    /// 1-based position of the most recently examined character.
    pos: usize,
}

impl Parser<'_> {
    fn skip_whitespace(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_whitespace();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next().map(|(_, c)| c);
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<(), TreeError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            _ => Err(self.syntax(&format!("expected `{want}`"))),
        }
    }

    fn syntax(&mut self, message: &str) -> TreeError {
        TreeError::Syntax {
            position: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn subtree(&mut self) -> Result<PhyloTree, TreeError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let mut children = vec![self.subtree()?];
                if self.peek() == Some(')') {
                    // The grammar requires at least one comma here.
                    return Err(TreeError::UnderfullNode);
                }
                while self.peek() == Some(',') {
                    self.bump();
                    children.push(self.subtree()?);
                }
                self.expect(')')?;
                PhyloTree::node(children)
            }
            Some(c) if is_label_char(c) => Ok(PhyloTree::leaf(self.label()?)),
            _ => Err(self.syntax("expected `(` or a label")),
        }
    }

    fn label(&mut self) -> Result<Label, TreeError> {
        let mut token = String::new();
        while matches!(self.chars.peek(), Some(&(_, c)) if is_label_char(c)) {
            token.push(self.bump().unwrap());
        }
        if token.is_empty() {
            return Err(self.syntax("expected a label"));
        }
        Label::new(token)
    }
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

#[cfg(test)]
mod tests {
    use super::super::label;
    use super::*;

    #[test]
    fn parses_single_leaf() {
        assert_eq!(parse_tree("a;").unwrap(), PhyloTree::leaf(label("a")));
    }

    #[test]
    fn parses_nested_tree() {
        let tree = parse_tree("((1,2),3);").unwrap();
        assert_eq!(tree.size(), 3);
        assert_eq!(tree.to_string(), "((1,2),3);");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_tree(" ( a , ( b , c ) ) ; ").unwrap();
        let b = parse_tree("(a,(b,c));").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn serializes_canonical_child_order() {
        assert_eq!(parse_tree("(b,a);").unwrap().to_string(), "(a,b);");
        assert_eq!(
            parse_tree("((d,c),(b,a));").unwrap().to_string(),
            "((a,b),(c,d));"
        );
        assert_eq!(parse_tree("x;").unwrap().to_string(), "x;");
    }

    #[test]
    fn rejects_underfull_node() {
        assert_eq!(parse_tree("(a);"), Err(TreeError::UnderfullNode));
    }

    #[test]
    fn rejects_duplicate_leaves() {
        assert_eq!(
            parse_tree("(a,(b,a));"),
            Err(TreeError::DuplicateLabel(label("a")))
        );
    }

    #[test]
    fn reports_error_positions() {
        assert_eq!(
            parse_tree("(a,b;"),
            Err(TreeError::Syntax {
                position: 5,
                message: "expected `)`".into()
            })
        );
        assert!(matches!(
            parse_tree("(a,b)"),
            Err(TreeError::Syntax { position: 6, .. })
        ));
        assert!(matches!(
            parse_tree("(a,b); junk"),
            Err(TreeError::Syntax { .. })
        ));
        assert!(matches!(parse_tree(""), Err(TreeError::Syntax { .. })));
        assert!(matches!(parse_tree("(a,);"), Err(TreeError::Syntax { .. })));
    }

    #[test]
    fn round_trips_canonical_forms() {
        for s in ["a;", "(a,b);", "((a,b),c);", "(a,(b,c),(d,(e,f)));"] {
            let tree = parse_tree(s).unwrap();
            assert_eq!(tree.to_string(), s);
            assert_eq!(parse_tree(&tree.to_string()).unwrap(), tree);
        }
    }
}
