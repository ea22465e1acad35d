import java.io.BufferedReader;
import java.io.ByteArrayOutputStream;
import java.io.FileReader;
import java.io.FileWriter;
import java.io.PrintStream;
import java.lang.reflect.InvocationTargetException;
import java.lang.reflect.Method;
import java.util.Base64;

import org.codehaus.janino.SimpleCompiler;

// Batch runner: compiles each job's source with Janino and invokes main with
// the job's arguments, capturing stdout.
//
// Job line:    id \t source-path \t class-name \t space-separated args
// Result line: id \t status \t base64(stdout) \t base64(detail)
public class Harness {

  static String status;
  static String detail;

  public static void main(String[] argv) throws Exception {
    BufferedReader in = new BufferedReader(new FileReader(argv[0]));
    FileWriter out = new FileWriter(argv[1]);
    PrintStream realOut = System.out;
    String line;
    while ((line = in.readLine()) != null) {
      if (line.length() == 0) continue;
      String[] parts = line.split("\t", -1);
      String[] args = parts[3].length() == 0 ? new String[0] : parts[3].split(" ");
      ByteArrayOutputStream buf = new ByteArrayOutputStream();
      runJob(parts[1], parts[2], args, buf, realOut);
      out.write(parts[0] + "\t" + status + "\t" + enc(buf.toByteArray()) + "\t"
          + enc(detail.getBytes("UTF-8")) + "\n");
    }
    out.close();
    System.exit(0);
  }

  static String enc(byte[] bytes) {
    return Base64.getEncoder().encodeToString(bytes);
  }

  static void runJob(String path, String className, final String[] args,
                     ByteArrayOutputStream buf, PrintStream realOut) {
    status = "OK";
    detail = "";
    final Method main;
    try {
      SimpleCompiler sc = new SimpleCompiler();
      sc.cook(new FileReader(path));
      Class c = sc.getClassLoader().loadClass(className);
      main = c.getMethod("main", new Class[] { String[].class });
    } catch (Exception e) {
      status = "COMPILE_ERROR";
      detail = String.valueOf(e.getMessage());
      return;
    }
    PrintStream capture = new PrintStream(buf, true);
    final Throwable[] thrown = new Throwable[1];
    Thread t = new Thread(new Runnable() {
      public void run() {
        try {
          main.invoke(null, new Object[] { args });
        } catch (InvocationTargetException e) {
          thrown[0] = e.getCause();
        } catch (Throwable e) {
          thrown[0] = e;
        }
      }
    });
    t.setDaemon(true);
    System.setOut(capture);
    t.start();
    try {
      t.join(10000);
    } catch (InterruptedException e) {
      status = "INTERRUPTED";
    }
    capture.flush();
    System.setOut(realOut);
    if (t.isAlive()) {
      status = "TIMEOUT";
    } else if (thrown[0] != null) {
      status = "EXCEPTION";
      detail = thrown[0].getClass().getName();
    }
  }
}
