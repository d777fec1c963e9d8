//! JSON form of formulas: `{"kind": "conj", "args": [..]}` trees, with
//! plain strings accepted on input and parsed as text.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse, Formula, Language};

#[derive(Serialize, Deserialize)]
struct Node {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nominal: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    args: Vec<Formula>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Text(String),
    Node(Node),
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let node = |kind: &str, args: Vec<Formula>| Node {
            kind: kind.into(),
            name: None,
            nominal: None,
            args,
        };
        let out = match self {
            Formula::Bot => node("bot", vec![]),
            Formula::Prop(p) => Node { name: Some(p.clone()), ..node("prop", vec![]) },
            Formula::Nom(i) => Node { name: Some(i.clone()), ..node("nom", vec![]) },
            Formula::Neg(a) => node("neg", vec![(**a).clone()]),
            Formula::Conj(a, b) => node("conj", vec![(**a).clone(), (**b).clone()]),
            Formula::Diamond(a) => node("diamond", vec![(**a).clone()]),
            Formula::Sat(i, a) => Node { nominal: Some(i.clone()), ..node("sat", vec![(**a).clone()]) },
            Formula::Exists(a) => node("exists", vec![(**a).clone()]),
        };
        out.serialize(serializer)
    }
}

fn from_text(text: &str) -> Result<Formula, crate::Error> {
    // `@` and `E` never share a language, so one of these accepts any
    // well-formed text.
    parse(text, Language::HAt).or_else(|e| match e {
        crate::Error::Language { .. } => parse(text, Language::HE),
        other => Err(other),
    })
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let node = match Repr::deserialize(deserializer)? {
            Repr::Text(text) => return from_text(&text).map_err(D::Error::custom),
            Repr::Node(node) => node,
        };
        let Node { kind, name, nominal, mut args } = node;
        let arity = match kind.as_str() {
            "bot" | "prop" | "nom" => 0,
            "conj" => 2,
            _ => 1,
        };
        if args.len() != arity {
            return Err(D::Error::custom(format!("`{kind}` takes {arity} argument(s), got {}", args.len())));
        }
        let need = |field: Option<String>, what: &str| {
            field.ok_or_else(|| D::Error::custom(format!("`{kind}` needs a `{what}` field")))
        };
        let mut arg = || Box::new(args.remove(0));
        Ok(match kind.as_str() {
            "bot" => Formula::Bot,
            "prop" => Formula::Prop(need(name, "name")?),
            "nom" => Formula::Nom(need(name, "name")?),
            "neg" => Formula::Neg(arg()),
            "conj" => {
                let a = arg();
                Formula::Conj(a, arg())
            }
            "diamond" => Formula::Diamond(arg()),
            "sat" => Formula::Sat(need(nominal, "nominal")?, arg()),
            "exists" => Formula::Exists(arg()),
            other => return Err(D::Error::custom(format!("unknown formula kind `{other}`"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_form() {
        let f = Formula::prop("p").and(Formula::nom("i").at("j"));
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v["kind"], "conj");
        assert_eq!(v["args"][1]["kind"], "sat");
        assert_eq!(v["args"][1]["nominal"], "j");
        let back: Formula = serde_json::from_value(v).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn text_form_is_accepted() {
        let f: Formula = serde_json::from_str(r#""[] p -> E i""#).unwrap();
        assert_eq!(f, Formula::prop("p").boxed().implies(Formula::nom("i").exists()));
        assert!(serde_json::from_str::<Formula>(r#""p &""#).is_err());
        assert!(serde_json::from_str::<Formula>(r#"{"kind":"conj","args":[]}"#).is_err());
    }
}
