// Generated code. Edit the natural-language source instead.
using System;
using System.Globalization;

public static class Program
{
    public static void Main()
    {
        try
        {
            Run();
        }
        catch (RuntimeFault fault)
        {
            Console.Error.WriteLine("ERROR " + fault.Code + ": " + fault.Message);
            Environment.Exit(1);
        }
    }

    private static void Run()
    {
        Console.WriteLine(FormatNumber(Add(3, Mul(4, 2))));
        Console.WriteLine(FormatNumber(Mul(Add(3, 4), 2)));
        Console.WriteLine(FormatNumber(Rem(10, 3)));
        Console.WriteLine(FormatNumber(Rem(-7, 3)));
        Console.WriteLine(FormatNumber(Sub(Sub(10, 3), 2)));
        Console.WriteLine(FormatNumber(Div(7, 2)));
        Console.WriteLine(FormatNumber(Div(1, 3)));
        Console.WriteLine(FormatNumber(Add(0.1, 0.2)));
        Console.WriteLine("Age: " + FormatNumber(25));
        Console.WriteLine("n=" + FormatNumber(Add(2, 3)));
        Console.WriteLine(FormatNumber(Mul(-Add(2, 3), 4)));
        Console.WriteLine(FormatNumber(2) + FormatNumber(Add(3, 4)));
    }

    private sealed class RuntimeFault : Exception
    {
        public readonly string Code;

        public RuntimeFault(string code, string message) : base(message)
        {
            Code = code;
        }
    }

    private static string FormatNumber(double value)
    {
        string text = value.ToString("R", CultureInfo.InvariantCulture);
        int mark = text.IndexOf('E');
        if (mark < 0)
        {
            return text;
        }
        string head = text.Substring(0, mark);
        int exponent = int.Parse(text.Substring(mark + 1), CultureInfo.InvariantCulture);
        string sign = "";
        if (head.StartsWith("-"))
        {
            sign = "-";
            head = head.Substring(1);
        }
        int point = head.IndexOf('.');
        string digits = head.Replace(".", "");
        if (point < 0)
        {
            point = head.Length;
        }
        point += exponent;
        if (point <= 0)
        {
            return sign + "0." + new string('0', -point) + digits;
        }
        if (point >= digits.Length)
        {
            return sign + digits + new string('0', point - digits.Length);
        }
        return sign + digits.Substring(0, point) + "." + digits.Substring(point);
    }

    private static double Arith(double value)
    {
        if (double.IsNaN(value) || double.IsInfinity(value))
        {
            throw new RuntimeFault("R101", "arithmetic result is not a finite Number");
        }
        return value;
    }

    private static double Add(double left, double right)
    {
        return Arith(left + right);
    }

    private static double Sub(double left, double right)
    {
        return Arith(left - right);
    }

    private static double Mul(double left, double right)
    {
        return Arith(left * right);
    }

    private static double Div(double left, double right)
    {
        if (right == 0.0)
        {
            throw new RuntimeFault("R101", "division by zero");
        }
        return Arith(left / right);
    }

    private static double Rem(double left, double right)
    {
        if (right == 0.0)
        {
            throw new RuntimeFault("R101", "remainder by zero");
        }
        return Arith(left % right);
    }

    private static int Index(double index, int size, string arrayName)
    {
        if (index != Math.Floor(index) || index < 1.0 || index > size)
        {
            throw new RuntimeFault(
                "R102",
                "index " + FormatNumber(index) + " is outside 1.." + size + " for array '" + arrayName + "'");
        }
        return (int)index - 1;
    }

    private static long RepeatCount(double count)
    {
        if (count != Math.Floor(count) || count < 0.0)
        {
            throw new RuntimeFault(
                "R104",
                "repeat count must be a non-negative whole number, not " + FormatNumber(count));
        }
        return (long)count;
    }

    private static string ReadText()
    {
        string line = Console.ReadLine();
        if (line == null)
        {
            throw new RuntimeFault("R103", "no input is available for Read");
        }
        return line;
    }

    private static double ReadNumber()
    {
        string line = ReadText();
        double value;
        bool parsed = double.TryParse(
            line.Trim(), NumberStyles.Float, CultureInfo.InvariantCulture, out value);
        if (!parsed || double.IsNaN(value) || double.IsInfinity(value))
        {
            throw new RuntimeFault("R103", "input '" + line.Trim() + "' is not a Number");
        }
        return value;
    }

    private static string[] NewTextArray(int size)
    {
        string[] cells = new string[size];
        for (int i = 0; i < size; i++)
        {
            cells[i] = "";
        }
        return cells;
    }
}
