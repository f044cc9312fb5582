//! Map chord labels to scale degrees and count marginals and transitions.

use degreescope::counts::{aggregate, count_piece};
use degreescope::harmony::degree_sequence;
use degreescope::ingest::parse_chord_stream;
use degreescope::ScaleDegree;

const PIECE_A: &str = "onset_s,label\n0,C\n1,C\n2,F\n3,G\n4,G\n5,C\n6,Am\n7,Dm\n8,G\n9,C\n";
const PIECE_B: &str = "onset_s,label\n0,C\n1,Ab\n2,Bb\n3,C\n4,Fm\n5,G\n6,C\n";

fn main() -> degreescope::Result<()> {
    let mut profiles = Vec::new();
    for text in [PIECE_A, PIECE_B] {
        // Both pieces are in C; repeated chords collapse to one event.
        let seq = degree_sequence(&parse_chord_stream(text)?, 0);
        let symbols: Vec<&str> = seq.degrees.iter().map(|d| d.symbol()).collect();
        println!("{}", symbols.join(" "));
        profiles.push(count_piece(&seq));
    }

    let total = aggregate(&profiles);
    println!("\n{} pieces, {} events", total.n_pieces, total.total_events);
    for d in ScaleDegree::ALL {
        let n = total.marginal[d.index()];
        if n > 0 {
            println!("{:>6} {n}", d.symbol());
        }
    }
    println!("\ntransitions:");
    for a in ScaleDegree::ALL {
        for b in ScaleDegree::ALL {
            let n = total.transitions[a.index()][b.index()];
            if n > 0 {
                println!("{:>6}>{:<6} {n}", a.symbol(), b.symbol());
            }
        }
    }
    Ok(())
}
