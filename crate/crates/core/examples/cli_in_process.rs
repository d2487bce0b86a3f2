//! Drives the command-line interface in-process: writes a game file, runs
//! `payoff` and an `eta1` sweep, and prints what the binary would print.

use std::io::Write;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("qgame-example");
    std::fs::create_dir_all(&dir)?;
    let game = dir.join("pd.json");
    std::fs::File::create(&game)?.write_all(br#"{"n": 2, "A": [[3, 0], [5, 1]]}"#)?;
    let game = game.to_str().expect("utf-8 temp path");

    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = qgame::cli::run(
        ["qgame", "payoff", "--game", game, "--gamma1", "90", "--degrees", "--a", "1", "--b", "0"],
        &mut out,
        &mut err,
    );
    println!("payoff exit {code}\n{}", String::from_utf8_lossy(&out));

    out.clear();
    let code = qgame::cli::run(
        ["qgame", "sweep", "--axis", "eta1", "--start", "0", "--stop", "90", "--steps", "4", "--degrees"],
        &mut out,
        &mut err,
    );
    println!("sweep exit {code}\n{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    Ok(())
}
